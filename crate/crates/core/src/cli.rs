//! Command-line front end.
//!
//! Every run is described by a [`RunConfig`], which can be saved as JSON and
//! replayed. Output is a list of `key=value` lines in machine mode and the
//! same entries as `key: value` in human mode. Nothing timing-dependent is
//! printed, so a replayed config gives byte-identical machine output.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coloring::{load_coloring, Color, Coloring};
use crate::constructive::{
    build_lemma23_sequence, build_lemma24_sequence, leader_russell_construct, order2_construct, prop42_construct,
    verify_epsilon_delta, verify_independence_124, Construction,
};
use crate::constructive::sequences::{EPSILON_DELTA_GUARD, INDEPENDENCE_GUARD};
use crate::error::Error;
use crate::fragment::{
    double_image_of, enumerate_fragment, four_torsion_of, solve_double, solve_quadruple, two_torsion_of,
    DEFAULT_FRAGMENT_CAP,
};
use crate::group::{Group, GroupSpec};
use crate::gvalue::GValue;
use crate::limits::{Limits, DEFAULT_NODE_LIMIT, DEFAULT_TIME_LIMIT};
use crate::search::{
    certify_class, find_witness, minimal_fragment_number, sweep_bounds, sweep_powers, verify_witness, Certificate,
    ColoringRule, Domain, Family, MinimalOutcome, Outcome, Strategy,
};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sumset-ramsey", version, about = "Monochromatic sumsets X + X in Abelian groups")]
struct Cli {
    #[command(flatten)]
    options: Options,
    /// Replay a saved run configuration instead of reading a subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the effective run configuration as JSON before running.
    #[arg(long, global = true)]
    save_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Print `key=value` lines.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Worker threads for the witness search (default: all available).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Node cap per search stage.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    /// Time cap per search stage, in seconds.
    #[arg(long, global = true, default_value_t = DEFAULT_TIME_LIMIT.as_secs())]
    pub time_limit: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            machine: false,
            threads: None,
            node_limit: DEFAULT_NODE_LIMIT,
            time_limit: DEFAULT_TIME_LIMIT.as_secs(),
        }
    }
}

impl Options {
    fn limits(&self) -> Limits {
        Limits {
            max_nodes: self.node_limit,
            max_time: Some(Duration::from_secs(self.time_limit)),
            threads: self.threads,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum StrategyArg {
    Classes,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Method {
    Lemma23,
    Lemma24,
    LeaderRussell,
    Order2,
    Prop42,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Command {
    /// Look for an `n`-element witness in one fragment.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        bound: u64,
        /// A colouring file, or rule text such as `support` or `random 3 7`.
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Classes)]
        strategy: StrategyArg,
    },
    /// Search a sweep of fragments, stopping at the first witness.
    Certify {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        bound: u64,
        /// Colouring rule rebuilt on each member.
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        size: usize,
        /// Powers of the group to sweep, as `a..b` or a comma list.
        #[arg(long, conflicts_with = "bounds")]
        powers: Option<String>,
        /// Bounds to sweep, as `a..b` or a comma list.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Least family member on which every `r`-colouring has a witness.
    Minimal {
        /// `nat` or `z<m>sum`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        exclude_zero: bool,
        #[arg(long)]
        colors: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        max: u64,
    },
    /// Run one of the constructive procedures.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        bound: u64,
        #[arg(long, default_value = "constant")]
        coloring: String,
        /// Witness size (leader-russell), block length (order2, prop42) or
        /// sequence length (lemma23, lemma24).
        #[arg(long)]
        n: usize,
        /// Number of colours (leader-russell).
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Length of the underlying sequence (leader-russell, order2).
        #[arg(long)]
        len: Option<usize>,
    },
    /// Report |G|, |G_2|, |G_4|, |2G| and the resulting classification.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        bound: u64,
    },
    /// Run the built-in regression suite of known results.
    VerifyPaper,
}

/// A complete, replayable description of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub options: Options,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run config serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: format!("run config: {e}"),
        })
    }
}

/// Ordered `key=value` entries.
#[derive(Default, Debug)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// First value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, machine: bool) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            if machine {
                s.push_str(&format!("{k}={v}\n"));
            } else {
                s.push_str(&format!("{k}: {v}\n"));
            }
        }
        s
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Construction { .. } => EXIT_NONE,
        Error::Structural(_) | Error::Domain(_) | Error::Parse { .. } | Error::Io(_) => EXIT_INPUT,
    }
}

fn input(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, msg: msg.into() }
}

fn parse_group(text: &str) -> Result<Group, Error> {
    text.parse::<Group>().map_err(|e| input(format!("--group `{text}`: {e}")))
}

/// Reads `src` as a file when one exists at that path, otherwise as rule
/// text. A `finite2g` or `injective` rule with no bound takes `bound`.
pub fn resolve_coloring(src: &str, group: &Group, bound: u64) -> Result<Coloring, Error> {
    let text = if Path::new(src).is_file() {
        std::fs::read_to_string(src)?
    } else {
        src.to_string()
    };
    let trimmed = text.trim();
    let text = if matches!(trimmed, "finite2g" | "injective") {
        format!("{trimmed} {bound}")
    } else {
        text
    };
    load_coloring(&text, group)
}

/// `a..b` (inclusive) or `a,b,c`.
pub fn parse_list(text: &str) -> Result<Vec<u64>, Error> {
    let bad = || input(format!("bad list `{text}`: expected `a..b` or `a,b,c`"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

pub fn parse_family(text: &str, exclude_zero: bool) -> Result<Family, Error> {
    if text == "nat" {
        return Ok(Family::Nat { exclude_zero });
    }
    text.strip_prefix('z')
        .and_then(|t| t.strip_suffix("sum"))
        .and_then(|m| m.parse::<u64>().ok())
        .filter(|&m| m >= 2)
        .map(|modulus| Family::CyclicPower { modulus })
        .ok_or_else(|| input(format!("unknown family `{text}`: expected `nat` or `z<m>sum`")))
}

fn push_certificate(rep: &mut Report, cert: &Certificate) {
    rep.push("domain", &cert.domain);
    rep.push("n", cert.n);
    match &cert.outcome {
        Outcome::Found(w) => {
            rep.push("outcome", "found");
            rep.push("color", &w.color);
            for x in &w.elements {
                rep.push("element", format!("({x})"));
            }
        }
        Outcome::NoneInDomain => rep.push("outcome", "none-in-domain"),
    }
    rep.push("nodes", cert.nodes);
}

fn push_construction(rep: &mut Report, c: &Construction) {
    rep.push("outcome", "found");
    rep.push("color", &c.witness.color);
    for (label, x) in &c.labelled {
        rep.push("point", format!("{label} ({x})"));
    }
    for x in &c.witness.elements {
        rep.push("element", format!("({x})"));
    }
    rep.push("indices", format!("{:?}", c.indices));
    for l in &c.log {
        rep.push("log", l);
    }
}

/// Executes `cfg`, filling `rep`, and returns the exit code.
pub fn execute(cfg: &RunConfig, rep: &mut Report) -> Result<i32, Error> {
    let limits = cfg.options.limits();
    match &cfg.command {
        Command::Search { group, bound, coloring, size, strategy } => {
            let g = parse_group(group)?;
            let c = resolve_coloring(coloring, &g, *bound)?;
            let domain = Domain::fragment(&g, *bound)?;
            let strategy = match strategy {
                StrategyArg::Classes => Strategy::ColorClasses,
                StrategyArg::Plain => Strategy::Plain,
            };
            rep.push("command", "search");
            rep.push("coloring", c.rule_name());
            let cert = find_witness(&domain, &c, *size, strategy, &limits)?;
            push_certificate(rep, &cert);
            Ok(if cert.is_none_in_domain() { EXIT_NONE } else { EXIT_FOUND })
        }
        Command::Certify { group, bound, coloring, size, powers, bounds } => {
            let g = parse_group(group)?;
            let rule: ColoringRule = coloring.parse()?;
            let members = match (powers, bounds) {
                (Some(p), _) => sweep_powers(g.spec(), parse_list(p)?.into_iter().map(|k| k as usize), *bound),
                (None, Some(b)) => sweep_bounds(&g, parse_list(b)?),
                (None, None) => sweep_bounds(&g, [*bound]),
            };
            rep.push("command", "certify");
            let certs = certify_class(&members, rule, *size, &limits)?;
            for cert in &certs {
                push_certificate(rep, cert);
            }
            let all_none = certs.iter().all(Certificate::is_none_in_domain);
            rep.push("certified", if all_none { "none-in-every-member" } else { "witness-found" });
            Ok(EXIT_FOUND)
        }
        Command::Minimal { family, exclude_zero, colors, size, max } => {
            let fam = parse_family(family, *exclude_zero)?;
            rep.push("command", "minimal");
            rep.push("family", fam);
            rep.push("colors", colors);
            rep.push("size", size);
            match minimal_fragment_number(fam, *colors, *size, *max, &limits)? {
                MinimalOutcome::Found { m, avoiding, nodes } => {
                    rep.push("outcome", "found");
                    rep.push("m", m);
                    if let Some((d, c)) = avoiding {
                        rep.push("avoiding_domain", &d.descriptor);
                        for x in d.elements() {
                            rep.push("avoid", format!("({x}) -> {}", c.color(x)?));
                        }
                    }
                    rep.push("nodes", nodes);
                    Ok(EXIT_FOUND)
                }
                MinimalOutcome::NotReached { max, avoiding: (d, _), nodes } => {
                    rep.push("outcome", "not-reached");
                    rep.push("max", max);
                    rep.push("avoiding_domain", &d.descriptor);
                    rep.push("nodes", nodes);
                    Ok(EXIT_NONE)
                }
                MinimalOutcome::Divergent { reason, certified } => {
                    rep.push("outcome", "divergent");
                    rep.push("reason", reason);
                    for cert in &certified {
                        rep.push("certified_domain", &cert.domain);
                    }
                    Ok(EXIT_FOUND)
                }
            }
        }
        Command::Construct { method, group, bound, coloring, n, r, len } => {
            let g = parse_group(group)?;
            rep.push("command", "construct");
            rep.push("method", method.to_possible_value().expect("no skipped variants").get_name());
            match method {
                Method::Lemma23 => {
                    let seq = build_lemma23_sequence(&g, *bound, *n, &limits)?;
                    for t in &seq.terms {
                        rep.push("term", format!("({t})"));
                    }
                    let k = seq.terms.len().min(INDEPENDENCE_GUARD);
                    rep.push("verified_prefix", k);
                    rep.push("verified", verify_independence_124(&seq.terms, k)?);
                    for l in &seq.log {
                        rep.push("log", l);
                    }
                }
                Method::Lemma24 => {
                    let seq = build_lemma24_sequence(&g, *bound, *n, &limits)?;
                    for (t, z) in seq.terms.iter().zip(&seq.halves) {
                        rep.push("term", format!("({t}) half ({z})"));
                    }
                    let k = (seq.halves.len() / 2).min(EPSILON_DELTA_GUARD);
                    rep.push("verified_block", k);
                    rep.push("verified", verify_epsilon_delta(&seq.halves, k)?);
                    for l in &seq.log {
                        rep.push("log", l);
                    }
                }
                Method::LeaderRussell => {
                    let c = resolve_coloring(coloring, &g, *bound)?;
                    let len = len.unwrap_or(2 * r + (n.saturating_sub(1)) * r + 4);
                    let seq = build_lemma23_sequence(&g, *bound, len, &limits)?;
                    push_construction(rep, &leader_russell_construct(&c, *r, *n, &seq, &limits)?);
                }
                Method::Order2 => {
                    let c = resolve_coloring(coloring, &g, *bound)?;
                    let len = len.unwrap_or(4 * n);
                    let seq = build_lemma24_sequence(&g, *bound, len, &limits)?;
                    push_construction(rep, &order2_construct(&c, *n, &seq, &limits)?);
                }
                Method::Prop42 => {
                    let c = resolve_coloring(coloring, &g, *bound)?;
                    push_construction(rep, &prop42_construct(&c, &g, *n, &limits)?);
                }
            }
            Ok(EXIT_FOUND)
        }
        Command::Analyze { group, bound } => {
            let g = parse_group(group)?;
            rep.push("command", "analyze");
            analyze(&g, *bound, rep)?;
            Ok(EXIT_FOUND)
        }
        Command::VerifyPaper => {
            rep.push("command", "verify-paper");
            let ok = verify_paper(&limits, rep)?;
            Ok(if ok { EXIT_FOUND } else { EXIT_NONE })
        }
    }
}

/// Largest subgroup listing printed in full by `analyze`.
const LIST_LIMIT: usize = 64;

fn analyze(g: &Group, bound: u64, rep: &mut Report) -> Result<(), Error> {
    let frag = enumerate_fragment(g, bound, DEFAULT_FRAGMENT_CAP)?;
    let g2 = two_torsion_of(&frag);
    let g4 = four_torsion_of(&frag);
    let dbl = double_image_of(&frag);
    let spec = g.spec();
    rep.push("group", spec);
    rep.push("bound", bound);
    rep.push("order", frag.len());
    rep.push("two_torsion", g2.len());
    rep.push("four_torsion", g4.len());
    rep.push("doubles", dbl.len());
    if dbl.len() <= LIST_LIMIT {
        let items: Vec<String> = dbl.elements.iter().map(ToString::to_string).collect();
        rep.push("doubles_list", format!("{{{}}}", items.join("; ")));
    }
    if spec.is_torsion() {
        let holds = dbl.len() * g2.len() == frag.len();
        rep.push("product_check", format!("{}*{}={} {}", dbl.len(), g2.len(), frag.len(), if holds { "holds" } else { "FAILS" }));
    } else {
        rep.push("product_check", "n/a (fragment of an infinite group)");
    }
    let (class, verdict) = if !spec.is_torsion() {
        ("infinite-2g", "2G is infinite: every finite colouring has witnesses of every finite size")
    } else if g2.len() == frag.len() {
        ("boolean", "Boolean: some 2-colouring has no 2-element witness")
    } else {
        ("finite-2g", "2G is finite: the colouring separating 2G has no 2-element witness")
    };
    rep.push("classification", class);
    rep.push("verdict", verdict);
    Ok(())
}

fn check(rep: &mut Report, name: &str, ok: bool) -> bool {
    rep.push(format!("check.{name}"), if ok { "pass" } else { "FAIL" });
    ok
}

/// Known finite facts that a correct build must reproduce.
fn verify_paper(limits: &Limits, rep: &mut Report) -> Result<bool, Error> {
    let mut all = true;

    // counterexample pair in (Z/4)^2 x Z
    let g: Group = "Z/4 Z/4 Z".parse()?;
    let pair = [g.parse_element("1,0,1")?, g.parse_element("3,2,1")?];
    let (mono, col) = verify_witness(&pair, &Coloring::Support)?;
    let expected = Color::Seq(vec![GValue::half(), GValue::from_sqrt2_multiple(2)]);
    let col_ok = col == Some(expected);
    all &= check(rep, "counterexample_pair", mono && col_ok);
    let cert = find_witness(&Domain::fragment(&g, 1)?, &Coloring::Support, 2, Strategy::ColorClasses, limits)?;
    all &= check(rep, "counterexample_search", !cert.is_none_in_domain());

    // the isomorphic copy Z x (Z/2)^2 has no such pair
    let tilde: Group = "Z Z/2 Z/2".parse()?;
    let cert = find_witness(&Domain::fragment(&tilde, 8)?, &Coloring::Support, 2, Strategy::ColorClasses, limits)?;
    all &= check(rep, "z_z2_z2_certified", cert.is_none_in_domain());

    // support colouring on groups without the needed orders
    let mut ok = true;
    for spec in ["Z/3 Z/3 Z/3 Z/3", "Z/6 Z/6 Z/6"] {
        let h: Group = spec.parse()?;
        let cert = find_witness(&Domain::fragment(&h, 0)?, &Coloring::Support, 2, Strategy::ColorClasses, limits)?;
        ok &= cert.is_none_in_domain();
    }
    all &= check(rep, "support_no_pair", ok);

    // finite 2G colouring on small finite groups
    let mut ok = true;
    for spec in GroupSpec::all_finite_up_to(16) {
        let h = Group::from(spec);
        let c = crate::coloring::finite_2g_coloring(&h, 0)?;
        let cert = find_witness(&Domain::fragment(&h, 0)?, &c, 2, Strategy::ColorClasses, limits)?;
        ok &= cert.is_none_in_domain();
    }
    all &= check(rep, "finite_2g_no_pair", ok);

    // solution counts of 2x = c and 4y = d
    let mut ok = true;
    for spec in GroupSpec::all_finite_up_to(32) {
        let h = Group::from(spec);
        let frag = enumerate_fragment(&h, 0, DEFAULT_FRAGMENT_CAP)?;
        let g2 = two_torsion_of(&frag).len();
        for c in &frag {
            ok &= solve_double(c, &frag).len() <= g2;
            ok &= solve_quadruple(c, &frag).len() <= g2 * g2;
        }
    }
    all &= check(rep, "solution_bounds", ok);

    // order-four construction with n = 1
    let z4: Group = Group::from(GroupSpec::cyclic_power(4, 6));
    let out = prop42_construct(&Coloring::Random { colors: 3, seed: 1 }, &z4, 1, limits)?;
    let e = |k: usize| z4.basis(out.indices[k]);
    let (x0, x1) = (&out.labelled[0].1, &out.labelled[1].1);
    let ok = out.witness.elements.len() == 2
        && *x0 == e(0)?.plus(&e(1)?.double())
        && *x1 == e(0)?.scalar_mul(3)
        && x0.double() == e(0)?.double()
        && x1.double() == e(0)?.double()
        && x0.plus(x1) == e(1)?.double();
    all &= check(rep, "z4_construction_n1", ok);

    rep.push("result", if all { "pass" } else { "FAIL" });
    Ok(all)
}

/// Parses `args`, runs, and writes the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_FOUND };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = match (&cli.config, cli.command) {
        (Some(path), _) => match std::fs::read_to_string(path).map_err(Error::from).and_then(|t| RunConfig::from_json(&t)) {
            Ok(cfg) => cfg,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
        },
        (None, Some(command)) => RunConfig { command, options: cli.options },
        (None, None) => {
            let _ = writeln!(err, "error: a subcommand or --config is required");
            return EXIT_INPUT;
        }
    };
    if let Some(path) = &cli.save_config {
        if let Err(e) = std::fs::write(path, cfg.to_json()) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    let mut rep = Report::default();
    let code = match execute(&cfg, &mut rep) {
        Ok(code) => code,
        Err(e) => {
            rep.push("error", &e);
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    };
    rep.push("exit", code);
    let _ = out.write_all(rep.render(cfg.options.machine).as_bytes());
    code
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["sumset-ramsey"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn lists_and_families() {
        assert_eq!(parse_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_list("2,5").unwrap(), vec![2, 5]);
        assert!(parse_list("4..1").is_err());
        assert_eq!(parse_family("z4sum", false).unwrap(), Family::CyclicPower { modulus: 4 });
        assert!(parse_family("q", false).is_err());
    }

    #[test]
    fn analyze_z8() {
        let (code, out) = run_str(&["--machine", "analyze", "--group", "Z/8"]);
        assert_eq!(code, 0);
        assert!(out.contains("two_torsion=2\n"));
        assert!(out.contains("doubles_list={0; 2; 4; 6}\n"));
        assert!(out.contains("product_check=4*2=8 holds\n"));
    }

    #[test]
    fn analyze_classification() {
        let (_, out) = run_str(&["--machine", "analyze", "--group", "Z/2 Z/2 Z/2"]);
        assert!(out.contains("classification=boolean\n"));
        assert!(out.contains("doubles=1\n"));
        let (_, out) = run_str(&["--machine", "analyze", "--group", "Z/4"]);
        assert!(out.contains("four_torsion=4\n") && out.contains("doubles=2\n"));
        let (_, out) = run_str(&["--machine", "analyze", "--group", "Z", "--bound", "3"]);
        assert!(out.contains("classification=infinite-2g\n"));
    }

    #[test]
    fn search_exit_codes() {
        let (code, out) = run_str(&["--machine", "search", "--group", "Z/4 Z/4 Z", "--bound", "1", "--coloring", "support", "--size", "2"]);
        assert_eq!(code, EXIT_FOUND);
        assert_eq!(out.matches("element=").count(), 2);
        let (code, _) = run_str(&["search", "--group", "Z/3 Z/3", "--coloring", "support", "--size", "2"]);
        assert_eq!(code, EXIT_NONE);
        let (code, _) = run_str(&["--node-limit", "3", "search", "--group", "Z/3 Z/3 Z/3", "--coloring", "support", "--size", "2"]);
        assert_eq!(code, EXIT_RESOURCE);
        let (code, _) = run_str(&["search", "--group", "Z/x", "--coloring", "support", "--size", "2"]);
        assert_eq!(code, EXIT_INPUT);
        let (code, _) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn construct_prop42() {
        let (code, out) = run_str(&["--machine", "construct", "--method", "prop42", "--group", "Z/4 Z/4 Z/4 Z/4", "--coloring", "constant", "--n", "2"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.matches("element=").count(), 4);
    }
}
