//! Searching for sets `X` with `X + X` monochromatic.
//!
//! A search runs over a finite [`Domain`] and either returns the least witness
//! in element order or certifies that the domain has none. Sums that fall
//! outside a partial colouring (a table, or an injective rule on a fragment)
//! have no colour, so a candidate producing one is never monochromatic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{finite_2g_coloring, injective_coloring, Color, Coloring};
use crate::error::Error;
use crate::fragment::{enumerate_fragment, DEFAULT_FRAGMENT_CAP};
use crate::group::{Element, Group, GroupSpec};
use crate::limits::{Limits, Meter};

/// A finite, sorted, duplicate-free set of candidate elements.
#[derive(Clone, Debug)]
pub struct Domain {
    pub descriptor: String,
    elements: Vec<Element>,
}

impl Domain {
    pub fn fragment(group: &Group, bound: u64) -> Result<Self, Error> {
        Ok(Domain {
            descriptor: if group.spec().is_torsion() {
                format!("{group}")
            } else {
                format!("{group} bound={bound}")
            },
            elements: enumerate_fragment(group, bound, DEFAULT_FRAGMENT_CAP)?,
        })
    }

    pub fn from_elements(descriptor: impl Into<String>, mut elements: Vec<Element>) -> Self {
        elements.sort();
        elements.dedup();
        Domain {
            descriptor: descriptor.into(),
            elements,
        }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Sorted, pairwise distinct.
    pub elements: Vec<Element>,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Witness),
    /// Only produced after the whole domain was explored.
    NoneInDomain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub domain: String,
    pub n: usize,
    pub outcome: Outcome,
    pub nodes: u64,
}

impl Certificate {
    pub fn is_none_in_domain(&self) -> bool {
        matches!(self.outcome, Outcome::NoneInDomain)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Found(w) => Some(w),
            Outcome::NoneInDomain => None,
        }
    }
}

/// Checks whether `X + X` lies in a single colour class.
///
/// Returns the common colour when it does. Every sum must be colourable.
pub fn verify_witness(xs: &[Element], c: &Coloring) -> Result<(bool, Option<Color>), Error> {
    if xs.is_empty() {
        return Err(Error::Structural("a witness needs at least one element".into()));
    }
    let distinct: BTreeSet<&Element> = xs.iter().collect();
    if distinct.len() != xs.len() {
        return Err(Error::Structural("witness elements must be distinct".into()));
    }
    let mut first: Option<Color> = None;
    let mut mono = true;
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i..] {
            let col = c.color(&x.add(y)?)?;
            match &first {
                None => first = Some(col),
                Some(f) if *f != col => mono = false,
                Some(_) => {}
            }
        }
    }
    Ok(if mono { (true, first) } else { (false, None) })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Partition candidates by the colour of `2x`, then backtrack per class.
    #[default]
    ColorClasses,
    /// Backtrack over all candidates with no partitioning.
    Plain,
}

fn colour_opt(c: &Coloring, g: &Element) -> Result<Option<Color>, Error> {
    match c.color(g) {
        Ok(col) => Ok(Some(col)),
        Err(Error::Domain(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Pair-sum colour checks, memoised for one backtracking run.
struct PairOracle<'a> {
    items: &'a [Element],
    coloring: &'a Coloring,
    memo: HashMap<(usize, usize), Option<Color>>,
}

impl<'a> PairOracle<'a> {
    fn new(items: &'a [Element], coloring: &'a Coloring) -> Self {
        PairOracle {
            items,
            coloring,
            memo: HashMap::new(),
        }
    }

    fn color(&mut self, i: usize, j: usize) -> Result<Option<Color>, Error> {
        let key = (i.min(j), i.max(j));
        if let Some(c) = self.memo.get(&key) {
            return Ok(c.clone());
        }
        let c = colour_opt(self.coloring, &self.items[i].plus(&self.items[j]))?;
        self.memo.insert(key, c.clone());
        Ok(c)
    }
}

/// Lex-least `n`-subset of `cands` whose pair sums all have colour `target`
/// (a `None` target is fixed by the first colour seen).
fn backtrack(
    cands: &[usize],
    n: usize,
    doubles: &[Option<Color>],
    pairs: &mut PairOracle<'_>,
    fixed_target: Option<&Color>,
    meter: &Meter,
) -> Result<Option<Vec<usize>>, Error> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        cands: &[usize],
        start: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        target: &mut Option<Color>,
        doubles: &[Option<Color>],
        pairs: &mut PairOracle<'_>,
        meter: &Meter,
    ) -> Result<bool, Error> {
        if chosen.len() == n {
            return Ok(true);
        }
        let need = n - chosen.len();
        for p in start..cands.len() {
            if cands.len() - p < need {
                break;
            }
            meter.tick(1)?;
            let v = cands[p];
            let Some(dv) = &doubles[v] else { continue };
            let was_unset = target.is_none();
            match target {
                Some(t) if t != dv => continue,
                Some(_) => {}
                None => *target = Some(dv.clone()),
            }
            let mut ok = true;
            for &u in chosen.iter() {
                if pairs.color(u, v)?.as_ref() != target.as_ref() {
                    ok = false;
                    break;
                }
            }
            if ok {
                chosen.push(v);
                if rec(cands, p + 1, n, chosen, target, doubles, pairs, meter)? {
                    return Ok(true);
                }
                chosen.pop();
            }
            if was_unset {
                *target = None;
            }
        }
        Ok(false)
    }

    let mut chosen = Vec::with_capacity(n);
    let mut target = fixed_target.cloned();
    let found = rec(cands, 0, n, &mut chosen, &mut target, doubles, pairs, meter)?;
    Ok(found.then_some(chosen))
}

/// Searches `domain` for the least `n`-element `X` with `X + X` monochromatic.
///
/// The result does not depend on the thread count. Hitting a cap returns
/// [`Error::Resource`], never a `NoneInDomain` certificate.
pub fn find_witness(
    domain: &Domain,
    c: &Coloring,
    n: usize,
    strategy: Strategy,
    limits: &Limits,
) -> Result<Certificate, Error> {
    if n == 0 {
        return Err(Error::Structural("witness size must be at least 1".into()));
    }
    let items = domain.elements();
    let meter = limits.meter(format!("witness search on {}", domain.descriptor));
    let found = limits.install(|| -> Result<Option<Vec<usize>>, Error> {
        let doubles: Vec<Option<Color>> = items
            .par_iter()
            .map(|x| colour_opt(c, &x.double()))
            .collect::<Result<_, _>>()?;
        meter.tick(items.len() as u64)?;
        match strategy {
            Strategy::Plain => {
                let all: Vec<usize> = (0..items.len()).collect();
                let mut pairs = PairOracle::new(items, c);
                backtrack(&all, n, &doubles, &mut pairs, None, &meter)
            }
            Strategy::ColorClasses => {
                let mut classes: BTreeMap<&Color, Vec<usize>> = BTreeMap::new();
                for (i, d) in doubles.iter().enumerate() {
                    if let Some(d) = d {
                        classes.entry(d).or_default().push(i);
                    }
                }
                let classes: Vec<(&Color, Vec<usize>)> =
                    classes.into_iter().filter(|(_, v)| v.len() >= n).collect();
                let per_class: Vec<Option<Vec<usize>>> = classes
                    .par_iter()
                    .map(|(col, members)| {
                        let mut pairs = PairOracle::new(items, c);
                        backtrack(members, n, &doubles, &mut pairs, Some(col), &meter)
                    })
                    .collect::<Result<_, _>>()?;
                Ok(per_class.into_iter().flatten().min())
            }
        }
    })?;
    let outcome = match found {
        Some(idx) => {
            let elements: Vec<Element> = idx.iter().map(|&i| items[i].clone()).collect();
            let color = c.color(&elements[0].double())?;
            Outcome::Found(Witness { elements, color })
        }
        None => Outcome::NoneInDomain,
    };
    Ok(Certificate {
        domain: domain.descriptor.clone(),
        n,
        outcome,
        nodes: meter.nodes(),
    })
}

/// A colouring rule that can be rebuilt on every member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringRule {
    Support,
    Constant,
    Finite2G,
    Injective,
    Random { colors: u64, seed: u64 },
}

impl ColoringRule {
    pub fn build(&self, group: &Group, bound: u64) -> Result<Coloring, Error> {
        match *self {
            ColoringRule::Support => Ok(Coloring::Support),
            ColoringRule::Constant => Ok(Coloring::Constant),
            ColoringRule::Finite2G => finite_2g_coloring(group, bound),
            ColoringRule::Injective => injective_coloring(group, bound),
            ColoringRule::Random { colors, seed } => Ok(Coloring::Random { colors, seed }),
        }
    }
}

impl std::str::FromStr for ColoringRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse {
            line: 1,
            msg: format!("unknown colouring rule `{s}`"),
        };
        match words.as_slice() {
            ["support"] => Ok(ColoringRule::Support),
            ["constant"] => Ok(ColoringRule::Constant),
            ["finite2g"] => Ok(ColoringRule::Finite2G),
            ["injective"] => Ok(ColoringRule::Injective),
            ["random", k, rest @ ..] if rest.len() <= 1 => Ok(ColoringRule::Random {
                colors: k.parse().map_err(|_| bad())?,
                seed: rest.first().map_or(Ok(0), |t| t.parse()).map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub group: Group,
    pub bound: u64,
}

/// `base^k` for each `k` in `powers`.
pub fn sweep_powers(base: &GroupSpec, powers: impl IntoIterator<Item = usize>, bound: u64) -> Vec<FamilyMember> {
    powers
        .into_iter()
        .map(|k| FamilyMember {
            group: Group::from(base.power(k)),
            bound,
        })
        .collect()
}

pub fn sweep_bounds(group: &Group, bounds: impl IntoIterator<Item = u64>) -> Vec<FamilyMember> {
    bounds
        .into_iter()
        .map(|bound| FamilyMember {
            group: group.clone(),
            bound,
        })
        .collect()
}

/// One certificate per member, in order. Stops after the first member that
/// has a witness, so later members are never claimed witness-free.
pub fn certify_class(
    members: &[FamilyMember],
    rule: ColoringRule,
    n: usize,
    limits: &Limits,
) -> Result<Vec<Certificate>, Error> {
    let mut out = Vec::new();
    for m in members {
        let domain = Domain::fragment(&m.group, m.bound)?;
        let c = rule.build(&m.group, m.bound)?;
        let cert = find_witness(&domain, &c, n, Strategy::ColorClasses, limits)?;
        let stop = !cert.is_none_in_domain();
        out.push(cert);
        if stop {
            break;
        }
    }
    Ok(out)
}

/// Increasing fragments over which [`minimal_fragment_number`] searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `{0, ..., M}` (or `{1, ..., M}`) inside `Z`.
    Nat { exclude_zero: bool },
    /// `(Z/m)^K`.
    CyclicPower { modulus: u64 },
}

impl Family {
    pub fn first_parameter(&self) -> u64 {
        match self {
            Family::Nat { exclude_zero: true } => 1,
            _ => 0,
        }
    }

    pub fn member(&self, m: u64) -> Result<Domain, Error> {
        match *self {
            Family::Nat { exclude_zero } => {
                let z: Group = Group::from(GroupSpec::new(vec![crate::group::Factor::Infinite])?);
                let lo = if exclude_zero { 1 } else { 0 };
                let els = (lo..=m as i64)
                    .map(|k| z.element(&[k]))
                    .collect::<Result<Vec<_>, _>>()?;
                let desc = format!("{{{lo}..{m}}} in Z");
                Ok(Domain::from_elements(desc, els))
            }
            Family::CyclicPower { modulus } => {
                let g = Group::from(GroupSpec::cyclic_power(modulus, m as usize));
                let mut d = Domain::fragment(&g, 0)?;
                d.descriptor = format!("(Z/{modulus})^{m}");
                Ok(d)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Nat { exclude_zero: false } => write!(f, "nat"),
            Family::Nat { exclude_zero: true } => write!(f, "nat-without-zero"),
            Family::CyclicPower { modulus } => write!(f, "z{modulus}sum"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum MinimalOutcome {
    /// Least member `m` on which every `r`-colouring has a witness, with an
    /// avoiding colouring of member `m - 1` when that member exists.
    Found {
        m: u64,
        avoiding: Option<(Domain, Coloring)>,
        nodes: u64,
    },
    /// Every member up to `max` has an avoiding colouring; the last one is kept.
    NotReached { max: u64, avoiding: (Domain, Coloring), nodes: u64 },
    /// No member can ever be forced; `certified` lists the members checked.
    Divergent { reason: String, certified: Vec<Certificate> },
}

/// The sumsets `X + X` of all `n`-subsets with `X + X` inside the domain, as
/// sorted index sets.
fn sumset_hyperedges(domain: &Domain, n: usize, meter: &Meter) -> Result<Vec<Vec<usize>>, Error> {
    let items = domain.elements();
    let index: HashMap<&Element, usize> = items.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut edges = BTreeSet::new();
    let mut pick: Vec<usize> = Vec::with_capacity(n);

    fn rec(
        items: &[Element],
        index: &HashMap<&Element, usize>,
        n: usize,
        start: usize,
        pick: &mut Vec<usize>,
        edges: &mut BTreeSet<Vec<usize>>,
        meter: &Meter,
    ) -> Result<(), Error> {
        if pick.len() == n {
            meter.tick(1)?;
            let mut e = Vec::with_capacity(n * (n + 1) / 2);
            for (a, &i) in pick.iter().enumerate() {
                for &j in &pick[a..] {
                    match index.get(&items[i].plus(&items[j])) {
                        Some(&k) => e.push(k),
                        None => return Ok(()),
                    }
                }
            }
            e.sort_unstable();
            e.dedup();
            edges.insert(e);
            return Ok(());
        }
        for v in start..items.len() {
            // Partial sets whose sums already leave the domain are dead.
            if pick.iter().chain(std::iter::once(&v)).all(|&u| index.contains_key(&items[u].plus(&items[v]))) {
                pick.push(v);
                rec(items, index, n, v + 1, pick, edges, meter)?;
                pick.pop();
            }
        }
        Ok(())
    }

    rec(items, &index, n, 0, &mut pick, &mut edges, meter)?;
    Ok(edges.into_iter().collect())
}

/// Backtracks over colourings in restricted-growth form (the first element
/// always gets colour 0, and each new colour is the next unused one), so
/// colourings equal up to relabelling are visited once.
fn avoiding_coloring(
    len: usize,
    edges: &[Vec<usize>],
    r: usize,
    meter: &Meter,
) -> Result<Option<Vec<u64>>, Error> {
    let mut by_last: Vec<Vec<&[usize]>> = vec![Vec::new(); len];
    for e in edges {
        if e.len() == 1 {
            return Ok(None);
        }
        by_last[*e.last().expect("nonempty edge")].push(e);
    }
    let mut col = vec![0u64; len];

    fn rec(
        v: usize,
        used: u64,
        r: usize,
        col: &mut Vec<u64>,
        by_last: &[Vec<&[usize]>],
        meter: &Meter,
    ) -> Result<bool, Error> {
        if v == col.len() {
            return Ok(true);
        }
        let top = (used + 1).min(r as u64);
        for k in 0..top {
            meter.tick(1)?;
            col[v] = k;
            let mono = by_last[v]
                .iter()
                .any(|e| e.iter().all(|&u| col[u] == k));
            if !mono && rec(v + 1, used.max(k + 1), r, col, by_last, meter)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    Ok(rec(0, 0, r, &mut col, &by_last, meter)?.then_some(col))
}

/// Least member of `family` on which every `r`-colouring admits an
/// `n`-element witness, searching members up to `max`.
pub fn minimal_fragment_number(
    family: Family,
    r: usize,
    n: usize,
    max: u64,
    limits: &Limits,
) -> Result<MinimalOutcome, Error> {
    if r == 0 || n == 0 {
        return Err(Error::Structural("colour count and witness size must be at least 1".into()));
    }
    if let Family::CyclicPower { modulus: 2 } = family {
        if r >= 2 && n >= 2 {
            // 2G = {0} on every member: the two-colour 2G rule always avoids.
            let members = sweep_powers(&GroupSpec::cyclic_power(2, 1), 0..=max as usize, 0);
            let certified = certify_class(&members, ColoringRule::Finite2G, n, limits)?;
            if certified.iter().all(Certificate::is_none_in_domain) {
                return Ok(MinimalOutcome::Divergent {
                    reason: "2G = {0} is finite on every member; the 2-colour rule \
                             separating 0 avoids all 2-element witnesses"
                        .into(),
                    certified,
                });
            }
        }
    }
    let meter = limits.meter(format!("minimal number search for {family}"));
    let mut last_avoiding: Option<(Domain, Coloring)> = None;
    let mut m = family.first_parameter();
    while m <= max {
        let domain = family.member(m)?;
        let edges = sumset_hyperedges(&domain, n, &meter).map_err(|e| annotate(e, &last_avoiding))?;
        match avoiding_coloring(domain.len(), &edges, r, &meter).map_err(|e| annotate(e, &last_avoiding))? {
            Some(col) => {
                let table = Coloring::Table(
                    domain.elements().iter().cloned().zip(col).collect(),
                );
                last_avoiding = Some((domain, table));
            }
            None => {
                return Ok(MinimalOutcome::Found {
                    m,
                    avoiding: last_avoiding,
                    nodes: meter.nodes(),
                })
            }
        }
        m += 1;
    }
    Ok(match last_avoiding {
        Some(avoiding) => MinimalOutcome::NotReached {
            max,
            avoiding,
            nodes: meter.nodes(),
        },
        None => unreachable!("max is below the first member"),
    })
}

fn annotate(e: Error, last: &Option<(Domain, Coloring)>) -> Error {
    match (e, last) {
        (Error::Resource(mut r), Some((d, _))) => {
            r.detail = format!("{}; lower bound: {} has an avoiding colouring", r.detail, d.descriptor);
            Error::Resource(r)
        }
        (e, _) => e,
    }
}
