//! Finitely generated Abelian groups given as ordered direct sums of cyclic
//! factors, and their finitely supported elements.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gvalue::{lcm_u64, GValue};
use crate::Order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    /// `Z/m`, with `m >= 2`.
    Cyclic(u64),
    /// A copy of `Z`.
    Infinite,
}

impl Factor {
    fn reduce(self, raw: i64) -> i64 {
        match self {
            Factor::Cyclic(m) => raw.rem_euclid(m as i64),
            Factor::Infinite => raw,
        }
    }

    fn add(self, a: i64, b: i64) -> i64 {
        match self {
            Factor::Cyclic(m) => (a + b).rem_euclid(m as i64),
            Factor::Infinite => a.checked_add(b).expect("coordinate overflow in Z factor"),
        }
    }

    fn mul(self, k: i64, a: i64) -> i64 {
        match self {
            Factor::Cyclic(m) => ((k as i128 * a as i128).rem_euclid(m as i128)) as i64,
            Factor::Infinite => k.checked_mul(a).expect("coordinate overflow in Z factor"),
        }
    }

    fn coord_order(self, raw: i64) -> Order {
        match self {
            Factor::Cyclic(m) => {
                let m = m as i64;
                let g = num_integer::gcd(raw, m);
                Order::Finite((m / g) as u64)
            }
            Factor::Infinite if raw == 0 => Order::Finite(1),
            Factor::Infinite => Order::Infinite,
        }
    }

    /// `r -> r/m mod 1` for `Z/m`, `k -> k*sqrt(2)` for `Z`.
    pub fn embed(self, raw: i64) -> GValue {
        match self {
            Factor::Cyclic(m) => GValue::new(
                BigRational::new(BigInt::from(raw), BigInt::from(m)),
                BigRational::zero(),
            ),
            Factor::Infinite => GValue::from_sqrt2_multiple(raw),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Cyclic(m) => write!(f, "Z/{m}"),
            Factor::Infinite => write!(f, "Z"),
        }
    }
}

/// The ordered factor list. Index `i` of the list is coordinate `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self, Error> {
        for f in &factors {
            if let Factor::Cyclic(m) = f {
                if *m < 2 {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("cyclic modulus must be at least 2, got {m}"),
                    });
                }
            }
        }
        Ok(GroupSpec { factors })
    }

    pub fn cyclic_power(m: u64, k: usize) -> Self {
        GroupSpec {
            factors: vec![Factor::Cyclic(m); k],
        }
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: usize) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() * k);
        for _ in 0..k {
            factors.extend_from_slice(&self.factors);
        }
        GroupSpec { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_torsion(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Cyclic(_)))
    }

    /// Group order for all-torsion specs, `None` if infinite or too large for u128.
    pub fn finite_order(&self) -> Option<u128> {
        let mut n: u128 = 1;
        for f in &self.factors {
            match f {
                Factor::Cyclic(m) => n = n.checked_mul(*m as u128)?,
                Factor::Infinite => return None,
            }
        }
        Some(n)
    }

    /// Every list of moduli `m_1 <= ... <= m_k` with product at most `max_order`,
    /// the trivial group included. Isomorphic groups appear once per
    /// decomposition, so `Z/6` and `Z/2 Z/3` are both listed.
    pub fn all_finite_up_to(max_order: u64) -> Vec<GroupSpec> {
        fn rec(min: u64, left: u64, cur: &mut Vec<Factor>, out: &mut Vec<GroupSpec>) {
            out.push(GroupSpec { factors: cur.clone() });
            for m in min..=left {
                cur.push(Factor::Cyclic(m));
                rec(m, left / m, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(2, max_order, &mut Vec::new(), &mut out);
        out
    }

    /// Number of elements in the fragment with Z-coordinates in `[-bound, bound]`.
    pub fn fragment_size(&self, bound: u64) -> Option<u128> {
        let mut n: u128 = 1;
        for f in &self.factors {
            let k = match f {
                Factor::Cyclic(m) => *m as u128,
                Factor::Infinite => 2 * bound as u128 + 1,
            };
            n = n.checked_mul(k)?;
        }
        Some(n)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for fac in &self.factors {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut factors = Vec::new();
        if s.trim() == "0" {
            return Ok(GroupSpec { factors });
        }
        for tok in s.split_whitespace() {
            let fac = if tok == "Z" {
                Factor::Infinite
            } else if let Some(m) = tok.strip_prefix("Z/") {
                let m: u64 = m.parse().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad factor `{tok}`: modulus is not an integer"),
                })?;
                Factor::Cyclic(m)
            } else {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("bad factor `{tok}`: expected `Z` or `Z/<m>`"),
                });
            };
            factors.push(fac);
        }
        GroupSpec::new(factors)
    }
}

/// Shared handle on a [`GroupSpec`]; elements keep one as their parent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group(Arc<GroupSpec>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.0)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&*self.0, f)
    }
}

impl From<GroupSpec> for Group {
    fn from(spec: GroupSpec) -> Self {
        Group(Arc::new(spec))
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(Group::from(s.parse::<GroupSpec>()?))
    }
}

impl Group {
    pub fn spec(&self) -> &GroupSpec {
        &self.0
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0.factors
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub fn zero(&self) -> Element {
        Element {
            group: self.clone(),
            coords: Vec::new(),
        }
    }

    /// Builds an element from one raw coordinate per factor, reducing residues.
    pub fn element(&self, raw: &[i64]) -> Result<Element, Error> {
        if raw.len() != self.rank() {
            return Err(Error::Structural(format!(
                "expected {} coordinates for `{}`, got {}",
                self.rank(),
                self,
                raw.len()
            )));
        }
        let coords = raw
            .iter()
            .zip(self.factors())
            .enumerate()
            .filter_map(|(i, (&r, f))| {
                let r = f.reduce(r);
                (r != 0).then_some((i as u32, r))
            })
            .collect();
        Ok(Element {
            group: self.clone(),
            coords,
        })
    }

    /// Builds an element from (index, raw) pairs; unspecified coordinates are zero.
    pub fn element_sparse(&self, pairs: &[(usize, i64)]) -> Result<Element, Error> {
        let mut dense = vec![0i64; self.rank()];
        for &(i, r) in pairs {
            if i >= self.rank() {
                return Err(Error::Structural(format!(
                    "coordinate index {i} out of range for `{self}`"
                )));
            }
            dense[i] = self.factors()[i].add(dense[i], r);
        }
        self.element(&dense)
    }

    /// The generator of factor `i`.
    pub fn basis(&self, i: usize) -> Result<Element, Error> {
        self.element_sparse(&[(i, 1)])
    }

    /// Parses comma-separated raw coordinates, e.g. `1,0,1`. The empty string
    /// is the zero element of the trivial group.
    pub fn parse_element(&self, s: &str) -> Result<Element, Error> {
        let s = s.trim();
        let raw: Vec<i64> = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| {
                    t.trim().parse::<i64>().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad coordinate `{}` in element `{s}`", t.trim()),
                    })
                })
                .collect::<Result<_, _>>()?
        };
        self.element(&raw)
    }
}

/// A finitely supported element. Only nonzero coordinates are stored, sorted
/// by factor index, each in canonical range.
#[derive(Clone)]
pub struct Element {
    group: Group,
    coords: Vec<(u32, i64)>,
}

impl Element {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Nonzero `(index, raw coordinate)` pairs in increasing index order.
    pub fn coords(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coords.iter().map(|&(i, r)| (i as usize, r))
    }

    pub fn coord(&self, i: usize) -> i64 {
        match self.coords.binary_search_by_key(&(i as u32), |&(j, _)| j) {
            Ok(p) => self.coords[p].1,
            Err(_) => 0,
        }
    }

    pub fn dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.group.rank()];
        for &(i, r) in &self.coords {
            out[i as usize] = r;
        }
        out
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().map(|&(i, _)| i as usize).collect()
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Element) -> Result<Element, Error> {
        if !self.group.same(&other.group) {
            return Err(Error::Structural(format!(
                "cannot add elements of `{}` and `{}`",
                self.group, other.group
            )));
        }
        Ok(self.plus(other))
    }

    /// Sum without the parent check; callers guarantee a shared group.
    pub(crate) fn plus(&self, other: &Element) -> Element {
        debug_assert!(self.group.same(&other.group));
        let factors = self.group.factors();
        let mut coords = Vec::with_capacity(self.coords.len() + other.coords.len());
        let (mut a, mut b) = (self.coords.iter().peekable(), other.coords.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) => match i.cmp(&j) {
                    Ordering::Less => {
                        coords.push((i, x));
                        a.next();
                    }
                    Ordering::Greater => {
                        coords.push((j, y));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = factors[i as usize].add(x, y);
                        if s != 0 {
                            coords.push((i, s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    coords.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    coords.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Element {
        self.scalar_mul(-1)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, Error> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, k: i64) -> Element {
        let factors = self.group.factors();
        let coords = self
            .coords
            .iter()
            .filter_map(|&(i, r)| {
                let v = factors[i as usize].mul(k, r);
                (v != 0).then_some((i, v))
            })
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn double(&self) -> Element {
        self.scalar_mul(2)
    }

    /// lcm of coordinate orders; infinite as soon as a Z coordinate is nonzero.
    pub fn order(&self) -> Order {
        let factors = self.group.factors();
        let mut acc = 1u64;
        for &(i, r) in &self.coords {
            match factors[i as usize].coord_order(r) {
                Order::Infinite => return Order::Infinite,
                Order::Finite(k) => acc = lcm_u64(acc, k),
            }
        }
        Order::Finite(acc)
    }

    /// Each nonzero coordinate replaced by its embedded value, in support order.
    pub fn canonical_gvalue(&self) -> Vec<(usize, GValue)> {
        let factors = self.group.factors();
        self.coords
            .iter()
            .map(|&(i, r)| (i as usize, factors[i as usize].embed(r)))
            .collect()
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.group.same(&other.group)
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the sparse `(index, raw)` list.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense = self.dense();
        for (k, r) in dense.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}
