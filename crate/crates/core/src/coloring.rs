//! Colourings of group elements and the tuple colourings they induce.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructive::pattern::{pattern_apply, PatternVec};
use crate::error::Error;
use crate::fragment::{double_image, enumerate_fragment, DEFAULT_FRAGMENT_CAP};
use crate::group::{Element, Group};
use crate::gvalue::GValue;

/// Which rule family produced a small colour. Part of colour equality, so
/// colours of different families never coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Palette {
    Constant,
    TwoG,
    Injective,
    Table,
    Random,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Small(Palette, u64),
    /// Nonzero embedded coordinates in support order.
    Seq(Vec<GValue>),
}

impl Color {
    pub fn small(palette: Palette, id: u64) -> Self {
        Color::Small(palette, id)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Small(_, id) => write!(f, "Small({id})"),
            Color::Seq(vs) => {
                f.write_str("Seq[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Small(p, id) => write!(f, "Small({p:?}, {id})"),
            Color::Seq(_) => fmt::Display::fmt(self, f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// `g` gets the sequence of its nonzero embedded coordinates.
    Support,
    Constant,
    /// `h_i -> i` on the enumerated `2G = {h_0, ..., h_{k-1}}`, everything else `k`.
    Finite2G { bound: u64, doubles: Vec<Element> },
    /// A distinct colour for each element of a finite domain.
    Injective { bound: u64, domain: Vec<Element> },
    Table(BTreeMap<Element, u64>),
    /// Pseudo-random colour in `0..colors`, a pure function of the coordinates.
    Random { colors: u64, seed: u64 },
}

pub fn support_color(g: &Element) -> Color {
    Color::Seq(g.canonical_gvalue().into_iter().map(|(_, v)| v).collect())
}

pub fn finite_2g_coloring(group: &Group, bound: u64) -> Result<Coloring, Error> {
    Ok(Coloring::Finite2G {
        bound,
        doubles: double_image(group, bound)?.elements,
    })
}

pub fn injective_coloring(group: &Group, bound: u64) -> Result<Coloring, Error> {
    Ok(Coloring::Injective {
        bound,
        domain: enumerate_fragment(group, bound, DEFAULT_FRAGMENT_CAP)?,
    })
}

/// A colouring drawn uniformly from `0..colors` per element of `domain`.
pub fn random_table(domain: &[Element], colors: u64, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Coloring::Table(
        domain
            .iter()
            .map(|g| (g.clone(), rng.gen_range(0..colors.max(1))))
            .collect(),
    )
}

fn random_color(g: &Element, colors: u64, seed: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for (i, r) in g.coords() {
        h = (h ^ i as u64).wrapping_mul(0x0000_0100_0000_01b3);
        h = (h ^ r as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h).gen_range(0..colors.max(1))
}

impl Coloring {
    pub fn color(&self, g: &Element) -> Result<Color, Error> {
        match self {
            Coloring::Support => Ok(support_color(g)),
            Coloring::Constant => Ok(Color::small(Palette::Constant, 0)),
            Coloring::Finite2G { doubles, .. } => {
                let id = doubles.binary_search(g).unwrap_or(doubles.len());
                Ok(Color::small(Palette::TwoG, id as u64))
            }
            Coloring::Injective { domain, .. } => domain
                .binary_search(g)
                .map(|i| Color::small(Palette::Injective, i as u64))
                .map_err(|_| Error::Domain(g.to_string())),
            Coloring::Table(t) => t
                .get(g)
                .map(|&id| Color::small(Palette::Table, id))
                .ok_or_else(|| Error::Domain(g.to_string())),
            Coloring::Random { colors, seed } => {
                Ok(Color::small(Palette::Random, random_color(g, *colors, *seed)))
            }
        }
    }

    /// Number of colours in use, `None` for the (countably infinite) support rule.
    pub fn palette_size(&self) -> Option<u64> {
        match self {
            Coloring::Support => None,
            Coloring::Constant => Some(1),
            Coloring::Finite2G { doubles, .. } => Some(doubles.len() as u64 + 1),
            Coloring::Injective { domain, .. } => Some(domain.len() as u64),
            Coloring::Table(t) => Some(t.values().collect::<BTreeSet<_>>().len() as u64),
            Coloring::Random { colors, .. } => Some(*colors),
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Coloring::Support => "support",
            Coloring::Constant => "constant",
            Coloring::Finite2G { .. } => "finite2g",
            Coloring::Injective { .. } => "injective",
            Coloring::Table(_) => "table",
            Coloring::Random { .. } => "random",
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads the line-oriented colouring format. The first meaningful line names
/// the rule; `table` is followed by `coords -> id` lines. Blank lines and
/// lines starting with `#` are ignored.
pub fn load_coloring(text: &str, group: &Group) -> Result<Coloring, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "empty colouring"))?;
    let mut words = head.split_whitespace();
    let name = words.next().unwrap_or_default();
    let args: Vec<&str> = words.collect();
    let int_arg = |k: usize, default: Option<u64>| -> Result<u64, Error> {
        match args.get(k) {
            Some(t) => t
                .parse()
                .map_err(|_| parse_err(ln, format!("bad integer `{t}` for `{name}`"))),
            None => default.ok_or_else(|| parse_err(ln, format!("`{name}` needs argument {}", k + 1))),
        }
    };
    let max_args = match name {
        "support" | "constant" | "table" => 0,
        "finite2g" | "injective" => 1,
        "random" => 2,
        _ => return Err(parse_err(ln, format!("unknown colouring rule `{name}`"))),
    };
    if args.len() > max_args {
        return Err(parse_err(ln, format!("too many arguments for `{name}`")));
    }
    let coloring = match name {
        "support" => Coloring::Support,
        "constant" => Coloring::Constant,
        "finite2g" => finite_2g_coloring(group, int_arg(0, Some(0))?)?,
        "injective" => injective_coloring(group, int_arg(0, Some(0))?)?,
        "random" => Coloring::Random {
            colors: int_arg(0, None)?.max(1),
            seed: int_arg(1, Some(0))?,
        },
        "table" => {
            let mut map = BTreeMap::new();
            for (ln, line) in lines.by_ref() {
                let (lhs, rhs) = line
                    .split_once("->")
                    .ok_or_else(|| parse_err(ln, "expected `coords -> colorId`"))?;
                let g = group
                    .parse_element(lhs)
                    .map_err(|e| parse_err(ln, e.to_string()))?;
                let id: u64 = rhs
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(ln, format!("bad colour id `{}`", rhs.trim())))?;
                if map.insert(g, id).is_some() {
                    return Err(parse_err(ln, format!("element `{}` coloured twice", lhs.trim())));
                }
            }
            Coloring::Table(map)
        }
        _ => unreachable!(),
    };
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, format!("unexpected line after `{name}` rule")));
    }
    Ok(coloring)
}

pub fn save_coloring(c: &Coloring) -> String {
    match c {
        Coloring::Support | Coloring::Constant => format!("{}\n", c.rule_name()),
        Coloring::Finite2G { bound, .. } | Coloring::Injective { bound, .. } => {
            format!("{} {bound}\n", c.rule_name())
        }
        Coloring::Random { colors, seed } => format!("random {colors} {seed}\n"),
        Coloring::Table(t) => {
            let mut s = String::from("table\n");
            for (g, id) in t {
                s.push_str(&format!("{g} -> {id}\n"));
            }
            s
        }
    }
}

/// How a tuple of indices is turned into group elements to colour.
#[derive(Clone, Debug)]
pub enum TupleRule {
    /// `d(k_1..k_n) = c(2 t_{k_1} + ... + 2 t_{k_n})`.
    SumOfDoubles,
    /// `d(k_1..k_m) = (c(p_0 * t_k), ..., c(p_r * t_k))` over the given patterns.
    Patterns(Vec<PatternVec>),
    /// Explicit colours on increasing tuples; no base colouring involved.
    Table(HashMap<Vec<usize>, u64>),
}

/// A colouring of strictly increasing `arity`-tuples of `0..domain_len`.
#[derive(Clone, Debug)]
pub struct TupleColoring<'a> {
    pub arity: usize,
    pub domain_len: usize,
    base: Option<&'a Coloring>,
    terms: Vec<Element>,
    rule: TupleRule,
}

pub type TupleColor = Vec<Color>;

/// Shape of an induced tuple colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedMode {
    /// Arity `n`, colouring sums of `n` distinct doubled terms.
    SumOfDoubles { arity: usize },
    /// Arity `2r`, coloured along the patterns `(4^(r-i), 2^(2i))`, `i = 0..=r`.
    LeaderRussell { r: usize },
}

/// `(4, ..., 4, 2, ..., 2)` with `r - i` fours and `2i` twos.
pub fn leader_russell_pattern(r: usize, i: usize) -> PatternVec {
    assert!(i <= r);
    let mut v = vec![4; r - i];
    v.extend(std::iter::repeat_n(2, 2 * i));
    PatternVec::new(v)
}

pub fn induced_tuple_coloring<'a>(
    base: &'a Coloring,
    terms: Vec<Element>,
    mode: InducedMode,
) -> Result<TupleColoring<'a>, Error> {
    let (arity, rule) = match mode {
        InducedMode::SumOfDoubles { arity } => (arity, TupleRule::SumOfDoubles),
        InducedMode::LeaderRussell { r } => (
            2 * r,
            TupleRule::Patterns((0..=r).map(|i| leader_russell_pattern(r, i)).collect()),
        ),
    };
    if terms.len() < arity {
        return Err(Error::Domain(format!(
            "tuple colouring of arity {arity} needs at least {arity} terms, got {}",
            terms.len()
        )));
    }
    Ok(TupleColoring {
        arity,
        domain_len: terms.len(),
        base: Some(base),
        terms,
        rule,
    })
}

impl TupleColoring<'static> {
    pub fn from_table(arity: usize, domain_len: usize, table: HashMap<Vec<usize>, u64>) -> Self {
        TupleColoring {
            arity,
            domain_len,
            base: None,
            terms: Vec::new(),
            rule: TupleRule::Table(table),
        }
    }
}

impl TupleColoring<'_> {
    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    /// Colour of the increasing tuple `idx`.
    pub fn color(&self, idx: &[usize]) -> Result<TupleColor, Error> {
        if idx.len() != self.arity
            || idx.windows(2).any(|w| w[0] >= w[1])
            || idx.last().is_some_and(|&k| k >= self.domain_len)
        {
            return Err(Error::Domain(format!(
                "{idx:?} is not an increasing {}-tuple below {}",
                self.arity, self.domain_len
            )));
        }
        match &self.rule {
            TupleRule::Table(t) => t
                .get(idx)
                .map(|&c| vec![Color::small(Palette::Table, c)])
                .ok_or_else(|| Error::Domain(format!("tuple {idx:?}"))),
            TupleRule::SumOfDoubles => {
                let base = self.base.expect("induced rule has a base colouring");
                let mut s = self.terms[idx[0]].double();
                for &k in &idx[1..] {
                    s = s.plus(&self.terms[k].double());
                }
                Ok(vec![base.color(&s)?])
            }
            TupleRule::Patterns(ps) => {
                let base = self.base.expect("induced rule has a base colouring");
                let picked: Vec<Element> = idx.iter().map(|&k| self.terms[k].clone()).collect();
                let group = picked[0].group().clone();
                ps.iter()
                    .map(|p| base.color(&pattern_apply(&group, p, &picked)?))
                    .collect()
            }
        }
    }
}
