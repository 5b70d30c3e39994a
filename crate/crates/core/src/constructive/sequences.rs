//! Sequences with unique small-coefficient representations.
//!
//! Two builders live here. The `{1,2,4}` builder produces `g_0, g_1, ...` such
//! that sums `sum eps_i g_{k_i}` with `eps_i` in `{1, 2, 4}` determine their
//! index sets. The order-two builder produces `z_0, z_1, ...` with each
//! `2 z_n` of order two and outside the span of the earlier ones.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::constructive::pattern::{pattern_apply, PatternVec};
use crate::error::Error;
use crate::fragment::{visit_shortlex, DEFAULT_FRAGMENT_CAP};
use crate::group::{Element, Factor, Group};
use crate::limits::{Limits, Meter};
use crate::Order;

/// Longest prefix the exhaustive `{1,2,4}` check accepts.
pub const INDEPENDENCE_GUARD: usize = 6;
/// Largest block length the exhaustive epsilon/delta check accepts.
pub const EPSILON_DELTA_GUARD: usize = 3;

/// Base of the geometric sequence used when an element of infinite order
/// exists. Digits `{0, 1, 2, 4}` are unambiguous in base 5 but not in base 4.
pub const GEOMETRIC_BASE: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceKind {
    /// Unique `{1,2,4}` representations.
    Unique124,
    /// Halves of independent order-two elements.
    OrderTwoHalves,
}

#[derive(Clone, Debug)]
pub struct IndependentSequence {
    pub kind: SequenceKind,
    /// `g_n`.
    pub terms: Vec<Element>,
    /// `z_n` with `2 z_n = g_n`; empty for [`SequenceKind::Unique124`].
    pub halves: Vec<Element>,
    pub log: Vec<String>,
}

const COEFFS: [i64; 3] = [1, 2, 4];

/// Calls `f(indices, coefficients, value)` for every `{1,2,4}` combination
/// over `seq`, the empty one included.
fn for_each_combination(seq: &[Element], group: &Group, mut f: impl FnMut(&[usize], &[i64], &Element) -> bool) -> bool {
    fn rec(
        seq: &[Element],
        start: usize,
        idx: &mut Vec<usize>,
        co: &mut Vec<i64>,
        acc: &Element,
        f: &mut impl FnMut(&[usize], &[i64], &Element) -> bool,
    ) -> bool {
        if !f(idx, co, acc) {
            return false;
        }
        for k in start..seq.len() {
            for c in COEFFS {
                idx.push(k);
                co.push(c);
                let next = acc.plus(&seq[k].scalar_mul(c));
                let keep = rec(seq, k + 1, idx, co, &next, f);
                idx.pop();
                co.pop();
                if !keep {
                    return false;
                }
            }
        }
        true
    }
    rec(seq, 0, &mut Vec::new(), &mut Vec::new(), &group.zero(), &mut f)
}

/// Exhaustively checks the unique-representation property on the first
/// `prefix_len` terms: equal sums must use the same indices, with equal
/// coefficients everywhere except possibly the last index.
pub fn verify_independence_124(seq: &[Element], prefix_len: usize) -> Result<bool, Error> {
    if prefix_len > INDEPENDENCE_GUARD || prefix_len > seq.len() {
        return Err(Error::Structural(format!(
            "prefix length {prefix_len} exceeds the guard {INDEPENDENCE_GUARD} or the sequence length {}",
            seq.len()
        )));
    }
    let prefix = &seq[..prefix_len];
    let Some(first) = prefix.first() else {
        return Ok(true);
    };
    let group = first.group().clone();
    let mut seen: HashMap<Element, (Vec<usize>, Vec<i64>)> = HashMap::new();
    let ok = for_each_combination(prefix, &group, |idx, co, val| match seen.get(val) {
        None => {
            seen.insert(val.clone(), (idx.to_vec(), co.to_vec()));
            true
        }
        Some((i0, c0)) => {
            i0 == idx && (co.is_empty() || c0[..co.len() - 1] == co[..co.len() - 1])
        }
    });
    Ok(ok)
}

/// Subgroup generated by `gens` as an explicit set (finite groups only).
fn generated_subgroup(group: &Group, gens: &[Element], cap: usize) -> Result<HashSet<Element>, Error> {
    let mut h: HashSet<Element> = HashSet::from([group.zero()]);
    for g in gens {
        let Order::Finite(k) = g.order() else {
            return Err(Error::Structural("generated subgroup is infinite".into()));
        };
        if h.contains(g) {
            continue;
        }
        let mut next = HashSet::with_capacity(h.len() * k as usize);
        for x in &h {
            let mut y = x.clone();
            for _ in 0..k {
                next.insert(y.clone());
                y = y.plus(g);
            }
        }
        if next.len() > cap {
            return Err(Error::construction(
                "subgroup",
                format!("generated subgroup exceeds {cap} elements"),
            ));
        }
        h = next;
    }
    Ok(h)
}

struct Lemma23Search<'a> {
    group: &'a Group,
    bound: u64,
    target: usize,
    meter: Meter,
    log: Vec<String>,
}

impl Lemma23Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<Element>) -> Result<bool, Error> {
        if chosen.len() == self.target {
            return Ok(true);
        }
        let h = generated_subgroup(self.group, chosen, DEFAULT_FRAGMENT_CAP)?;
        let step = chosen.len();
        let mut rejected = 0u64;
        let (group, bound) = (self.group.clone(), self.bound);
        let flow = visit_shortlex(&group, bound, |g| {
            if let Err(e) = self.meter.tick(1) {
                return ControlFlow::Break(Err(e));
            }
            // g, 2g, 3g, 4g all avoid the span of the earlier terms
            if (1..=4).any(|k| h.contains(&g.scalar_mul(k))) {
                rejected += 1;
                return ControlFlow::Continue(());
            }
            chosen.push(g);
            let len = chosen.len().min(INDEPENDENCE_GUARD);
            match verify_independence_124(chosen, len) {
                Ok(true) => {}
                Ok(false) => {
                    chosen.pop();
                    rejected += 1;
                    return ControlFlow::Continue(());
                }
                Err(e) => return ControlFlow::Break(Err(e)),
            }
            self.log.push(format!(
                "step {step}: g_{step} = ({}) after {rejected} rejected candidates",
                chosen[step]
            ));
            match self.extend(chosen) {
                Ok(true) => ControlFlow::Break(Ok(())),
                Ok(false) => {
                    self.log.push(format!("step {step}: backtrack from ({})", chosen[step]));
                    chosen.pop();
                    rejected += 1;
                    ControlFlow::Continue(())
                }
                Err(e) => ControlFlow::Break(Err(e)),
            }
        });
        match flow {
            ControlFlow::Break(Ok(())) => Ok(true),
            ControlFlow::Break(Err(e)) => Err(e),
            ControlFlow::Continue(()) => Ok(false),
        }
    }
}

/// Builds `len` terms of a `{1,2,4}`-unique sequence.
///
/// With a `Z` factor the sequence is `g_n = 5^n a` for its generator `a`.
/// Otherwise candidates are taken greedily in shortlex order, keeping `g`
/// only when none of `g, 2g, 3g, 4g` lies in the subgroup spanned by the
/// earlier terms, with backtracking on dead ends.
pub fn build_lemma23_sequence(
    group: &Group,
    bound: u64,
    len: usize,
    limits: &Limits,
) -> Result<IndependentSequence, Error> {
    if let Some(i) = group.factors().iter().position(|f| *f == Factor::Infinite) {
        // 4 * (5^0 + ... + 5^(len-1)) must fit in an i64 coordinate
        if len > 26 {
            return Err(Error::construction(
                "lemma23",
                format!("geometric sequence of length {len} overflows Z coordinates (max 26)"),
            ));
        }
        let a = group.basis(i)?;
        let terms: Vec<Element> = (0..len as u32).map(|k| a.scalar_mul(GEOMETRIC_BASE.pow(k))).collect();
        return Ok(IndependentSequence {
            kind: SequenceKind::Unique124,
            terms,
            halves: Vec::new(),
            log: vec![format!(
                "infinite-order element a = ({a}) in factor {i}; g_n = {GEOMETRIC_BASE}^n a"
            )],
        });
    }
    let mut search = Lemma23Search {
        group,
        bound,
        target: len,
        meter: limits.meter("unique-representation sequence"),
        log: Vec::new(),
    };
    let mut chosen = Vec::with_capacity(len);
    if search.extend(&mut chosen)? {
        Ok(IndependentSequence {
            kind: SequenceKind::Unique124,
            terms: chosen,
            halves: Vec::new(),
            log: search.log,
        })
    } else {
        let best = search
            .log
            .iter()
            .filter_map(|l| l.strip_prefix("step ").and_then(|t| t.split(':').next()?.parse::<usize>().ok()))
            .max()
            .map_or(0, |s| s + 1);
        Err(Error::construction(
            "lemma23",
            format!("`{group}` ran out of candidates; longest prefix reached has length {best} of {len}"),
        ))
    }
}

/// Least solution of `2x = g`, coordinate by coordinate.
fn halve(g: &Element) -> Option<Element> {
    let factors = g.group().factors();
    let mut pairs = Vec::new();
    for (i, v) in g.coords() {
        let x = match factors[i] {
            Factor::Cyclic(m) => (0..m as i64).find(|x| (2 * x).rem_euclid(m as i64) == v)?,
            Factor::Infinite => {
                if v % 2 != 0 {
                    return None;
                }
                v / 2
            }
        };
        pairs.push((i, x));
    }
    g.group().element_sparse(&pairs).ok()
}

/// Incremental rank test over GF(2) for order-two elements, keyed by support.
#[derive(Default)]
struct Gf2Basis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Gf2Basis {
    fn bits(g: &Element) -> Vec<u64> {
        let words = g.group().rank().div_ceil(64);
        let mut v = vec![0u64; words];
        for i in g.support() {
            v[i / 64] |= 1 << (i % 64);
        }
        v
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (pivot, row) in &self.rows {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        v
    }

    /// Adds `g` if it is independent of the current rows.
    fn insert(&mut self, g: &Element) -> bool {
        let v = self.reduce(Self::bits(g));
        let pivot = v
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize);
        match pivot {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row[p / 64] >> (p % 64) & 1 == 1 {
                        for (a, b) in row.iter_mut().zip(&v) {
                            *a ^= b;
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}

fn in_double_image(g: &Element) -> bool {
    let factors = g.group().factors();
    g.coords().all(|(i, v)| match factors[i] {
        Factor::Cyclic(m) => (0..m as i64).any(|x| (2 * x).rem_euclid(m as i64) == v),
        Factor::Infinite => v % 2 == 0,
    })
}

/// Builds `len` pairs `(g_n, z_n)` with `g_n` in `2G` of order two, outside
/// the span of `g_0, ..., g_{n-1}`, and `2 z_n = g_n`.
///
/// Candidates are taken in shortlex order, so on `(Z/4)^K` this gives
/// `z_n = e_n`.
pub fn build_lemma24_sequence(
    group: &Group,
    bound: u64,
    len: usize,
    limits: &Limits,
) -> Result<IndependentSequence, Error> {
    let meter = limits.meter("order-two sequence");
    let mut basis = Gf2Basis::default();
    let mut terms = Vec::with_capacity(len);
    let mut halves = Vec::with_capacity(len);
    let mut log = Vec::new();
    let mut rejected = 0u64;
    if len > 0 {
        let flow = visit_shortlex(group, bound, |g| {
            if let Err(e) = meter.tick(1) {
                return ControlFlow::Break(Err(e));
            }
            if g.order() != Order::Finite(2) || !in_double_image(&g) || !basis.insert(&g) {
                rejected += 1;
                return ControlFlow::Continue(());
            }
            let z = halve(&g).expect("element of 2G has a half");
            log.push(format!(
                "step {}: g = ({g}), z = ({z}) after {rejected} rejected candidates",
                terms.len()
            ));
            terms.push(g);
            halves.push(z);
            if terms.len() == len {
                ControlFlow::Break(Ok(()))
            } else {
                ControlFlow::Continue(())
            }
        });
        match flow {
            ControlFlow::Break(Ok(())) => {}
            ControlFlow::Break(Err(e)) => return Err(e),
            ControlFlow::Continue(()) => {
                return Err(Error::construction(
                    "lemma24",
                    format!(
                        "`{group}` has only {} independent order-two elements in 2G, need {len}",
                        terms.len()
                    ),
                ))
            }
        }
    }
    Ok(IndependentSequence {
        kind: SequenceKind::OrderTwoHalves,
        terms,
        halves,
        log,
    })
}

/// `(eps_{f(1)}, ..., eps_{f(n)})` with `eps_0 = 3, eps_1 = 1`.
pub fn epsilon_pattern(f: &[u8]) -> PatternVec {
    PatternVec::new(f.iter().map(|&b| if b == 0 { 3 } else { 1 }).collect())
}

/// `(delta_{f(1)}, ..., delta_{f(n)})` with `delta_0 = 0, delta_1 = 2`.
pub fn delta_pattern(f: &[u8]) -> PatternVec {
    PatternVec::new(f.iter().map(|&b| if b == 0 { 0 } else { 2 }).collect())
}

/// All `f : {1..n} -> {0,1}` in binary counting order, `f(1)` least significant.
pub fn all_functions(n: usize) -> Vec<Vec<u8>> {
    (0..1u64 << n)
        .map(|mask| (0..n).map(|k| (mask >> k & 1) as u8).collect())
        .collect()
}

/// `eps_f * (z_i) + delta_f * (z_j)`.
pub fn epsilon_delta_point(group: &Group, f: &[u8], zi: &[Element], zj: &[Element]) -> Result<Element, Error> {
    pattern_apply(group, &epsilon_pattern(f), zi)?.add(&pattern_apply(group, &delta_pattern(f), zj)?)
}

/// Checks that the `2^n` points `eps_f * (z_i) + delta_f * (z_j)` are pairwise
/// distinct for every choice of `2n` distinct indices into `zseq`.
pub fn verify_epsilon_delta(zseq: &[Element], n: usize) -> Result<bool, Error> {
    if n > EPSILON_DELTA_GUARD {
        return Err(Error::Structural(format!(
            "block length {n} exceeds the exhaustive guard {EPSILON_DELTA_GUARD}"
        )));
    }
    if 2 * n > zseq.len() {
        return Err(Error::Structural(format!(
            "need {} indices, sequence has {}",
            2 * n,
            zseq.len()
        )));
    }
    if n == 0 {
        return Ok(true);
    }
    let group = zseq[0].group().clone();
    let fs = all_functions(n);

    fn rec(
        zseq: &[Element],
        n: usize,
        picked: &mut Vec<usize>,
        group: &Group,
        fs: &[Vec<u8>],
    ) -> Result<bool, Error> {
        if picked.len() == 2 * n {
            let zi: Vec<Element> = picked[..n].iter().map(|&k| zseq[k].clone()).collect();
            let zj: Vec<Element> = picked[n..].iter().map(|&k| zseq[k].clone()).collect();
            let mut seen = HashSet::new();
            for f in fs {
                if !seen.insert(epsilon_delta_point(group, f, &zi, &zj)?) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for k in 0..zseq.len() {
            if picked.contains(&k) {
                continue;
            }
            picked.push(k);
            let ok = rec(zseq, n, picked, group, fs)?;
            picked.pop();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    rec(zseq, n, &mut Vec::with_capacity(2 * n), &group, &fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn grp(s: &str) -> Group {
        s.parse().unwrap()
    }

    fn ints(g: &Group, xs: &[i64]) -> Vec<Element> {
        xs.iter().map(|&x| g.element(&[x]).unwrap()).collect()
    }

    #[test]
    fn geometric_sequence_on_z() {
        let z = grp("Z");
        let s = build_lemma23_sequence(&z, 0, 4, &Limits::default()).unwrap();
        assert_eq!(s.terms, ints(&z, &[1, 5, 25, 125]));
        for p in 0..=4 {
            assert!(verify_independence_124(&s.terms, p).unwrap());
        }
    }

    #[test]
    fn arithmetic_progression_is_not_unique() {
        // 2 * g_1 = 1 * g_2 for g_n = n.
        let z = grp("Z");
        assert!(!verify_independence_124(&ints(&z, &[1, 2, 3]), 3).unwrap());
        assert!(!verify_independence_124(&ints(&z, &[1, 2]), 2).unwrap());
        assert!(verify_independence_124(&ints(&z, &[1]), 1).unwrap());
    }

    #[test]
    fn single_term_of_large_order_passes() {
        let g = grp("Z/7");
        assert!(verify_independence_124(&ints(&g, &[3]), 1).unwrap());
    }

    #[test]
    fn doubling_collision_in_z8() {
        // g_1 = 2 g_0: 2 g_0 = 1 g_1 with different index sets.
        let g = grp("Z/8");
        assert!(!verify_independence_124(&ints(&g, &[1, 2]), 2).unwrap());
        assert!(verify_independence_124(&ints(&g, &[1, 2]), 1).unwrap());
    }

    #[test]
    fn guard_is_enforced() {
        let z = grp("Z");
        let s = ints(&z, &[1, 5, 25, 125, 625, 3125, 15625]);
        assert!(verify_independence_124(&s, 7).is_err());
        assert!(verify_independence_124(&s[..2], 3).is_err());
    }

    #[test]
    fn order_three_groups_have_no_sequence() {
        // 4g = g whenever 3g = 0, so 4 g_0 + g_1 = g_0 + g_1.
        let g = Group::from(GroupSpec::cyclic_power(3, 8));
        let err = build_lemma23_sequence(&g, 0, 3, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Construction { stage: "lemma23", .. }), "{err}");
    }

    #[test]
    fn boolean_groups_have_no_sequence() {
        let g = Group::from(GroupSpec::cyclic_power(2, 4));
        assert!(build_lemma23_sequence(&g, 0, 1, &Limits::default()).is_err());
    }

    #[test]
    fn torsion_sequences_pass_the_check() {
        for (spec, len) in [("Z/5 Z/5 Z/5", 3), ("Z/9 Z/9", 2), ("Z/7 Z/5 Z/8", 3), ("Z/25", 1)] {
            let g = grp(spec);
            let s = build_lemma23_sequence(&g, 0, len, &Limits::default()).unwrap();
            assert_eq!(s.terms.len(), len);
            assert!(verify_independence_124(&s.terms, len).unwrap(), "{spec}");
        }
    }

    #[test]
    fn z4_cube_gives_basis_halves() {
        let g = Group::from(GroupSpec::cyclic_power(4, 3));
        let s = build_lemma24_sequence(&g, 0, 3, &Limits::default()).unwrap();
        for k in 0..3 {
            assert_eq!(s.halves[k], g.basis(k).unwrap());
            assert_eq!(s.terms[k], g.basis(k).unwrap().scalar_mul(2));
        }
        assert!(verify_epsilon_delta(&s.halves, 1).unwrap());
    }

    #[test]
    fn lemma24_needs_order_two_supply() {
        let g = Group::from(GroupSpec::cyclic_power(3, 3));
        assert!(build_lemma24_sequence(&g, 0, 1, &Limits::default()).is_err());
        let g = grp("Z/4 Z/2 Z/6");
        // only the Z/4 factor has an order-two element inside 2G
        assert_eq!(build_lemma24_sequence(&g, 0, 1, &Limits::default()).unwrap().halves.len(), 1);
        assert!(build_lemma24_sequence(&g, 0, 2, &Limits::default()).is_err());
    }

    #[test]
    fn lemma24_single_term() {
        let g = grp("Z/8 Z");
        let s = build_lemma24_sequence(&g, 3, 1, &Limits::default()).unwrap();
        assert_eq!(s.halves[0].double(), s.terms[0]);
        assert_eq!(s.terms[0].order(), Order::Finite(2));
    }

    #[test]
    fn epsilon_delta_examples() {
        let g = Group::from(GroupSpec::cyclic_power(4, 4));
        let z: Vec<Element> = (0..4).map(|k| g.basis(k).unwrap()).collect();
        assert!(verify_epsilon_delta(&z, 2).unwrap());
        assert!(verify_epsilon_delta(&z, 0).unwrap());

        // 2 z_0 = 2 z_1 breaks the n = 1 case: 3 z_0 = z_0 + 2 z_1.
        let bad = vec![g.basis(0).unwrap(), g.element(&[3, 0, 0, 0]).unwrap(), g.basis(2).unwrap()];
        assert_eq!(bad[0].double(), bad[1].double());
        assert!(!verify_epsilon_delta(&bad, 1).unwrap());
        assert!(verify_epsilon_delta(&z, 3).is_err());
    }

    #[test]
    fn gf2_rank() {
        let g = Group::from(GroupSpec::cyclic_power(4, 3));
        let mut b = Gf2Basis::default();
        assert!(b.insert(&g.element(&[2, 2, 0]).unwrap()));
        assert!(b.insert(&g.element(&[0, 2, 2]).unwrap()));
        assert!(!b.insert(&g.element(&[2, 0, 2]).unwrap()));
        assert!(b.insert(&g.element(&[0, 0, 2]).unwrap()));
    }
}
