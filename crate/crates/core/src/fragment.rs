//! Finite truncations of groups and the structure computed on them.
//!
//! Torsion specs enumerate to the whole group. A `Z` factor is cut to the
//! window `[-bound, bound]`, so anything computed here for such a spec is a
//! statement about the fragment only.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ResourceExceeded};
use crate::group::{Element, Factor, Group};

/// Default ceiling on the number of elements a fragment may have.
pub const DEFAULT_FRAGMENT_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupLabel {
    /// `{ g : 2g = 0 }`
    TwoTorsion,
    /// `{ 2g : g in G }`
    Doubles,
    /// `{ g : 4g = 0 }`
    FourTorsion,
    Full,
}

#[derive(Clone, Debug)]
pub struct SubgroupEnumeration {
    pub label: SubgroupLabel,
    pub elements: Vec<Element>,
}

impl SubgroupEnumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// All elements of the fragment, sorted in element order.
pub fn enumerate_fragment(group: &Group, bound: u64, cap: usize) -> Result<Vec<Element>, Error> {
    let size = group.spec().fragment_size(bound);
    match size {
        Some(n) if n <= cap as u128 => {}
        _ => {
            return Err(Error::Resource(ResourceExceeded {
                what: format!("fragment of `{group}` with bound {bound}"),
                cap: cap as u64,
                detail: match size {
                    Some(n) => format!("fragment has {n} elements"),
                    None => "fragment size overflows".into(),
                },
            }))
        }
    }
    let ranges: Vec<(i64, i64)> = group
        .factors()
        .iter()
        .map(|f| match *f {
            Factor::Cyclic(m) => (0, m as i64 - 1),
            Factor::Infinite => (-(bound as i64), bound as i64),
        })
        .collect();
    let mut out = Vec::with_capacity(size.unwrap_or(0) as usize);
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(group.element(&cur)?);
        // odometer step
        let mut k = cur.len();
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            if cur[k] < ranges[k].1 {
                cur[k] += 1;
                break;
            }
            cur[k] = ranges[k].0;
        }
    }
}

/// Visits elements ordered by support size, then support (lexicographic),
/// then coordinates, stopping early on `Break`. Never materialises the
/// fragment, so it works on groups far too large to enumerate.
pub fn visit_shortlex<B>(
    group: &Group,
    bound: u64,
    mut f: impl FnMut(Element) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let values: Vec<Vec<i64>> = group
        .factors()
        .iter()
        .map(|fac| match *fac {
            Factor::Cyclic(m) => (1..m as i64).collect(),
            Factor::Infinite => (-(bound as i64)..=bound as i64).filter(|&v| v != 0).collect(),
        })
        .collect();
    let usable: Vec<usize> = (0..values.len()).filter(|&i| !values[i].is_empty()).collect();
    for size in 0..=usable.len() {
        let mut support: Vec<usize> = (0..size).collect();
        loop {
            let idx: Vec<usize> = support.iter().map(|&p| usable[p]).collect();
            let mut pos = vec![0usize; size];
            loop {
                let pairs: Vec<(usize, i64)> =
                    idx.iter().zip(&pos).map(|(&i, &p)| (i, values[i][p])).collect();
                f(group.element_sparse(&pairs).expect("indices in range"))?;
                let mut k = size;
                let mut done = true;
                while k > 0 {
                    k -= 1;
                    if pos[k] + 1 < values[idx[k]].len() {
                        pos[k] += 1;
                        done = false;
                        break;
                    }
                    pos[k] = 0;
                }
                if done {
                    break;
                }
            }
            // next combination of `size` positions out of `usable.len()`
            let n = usable.len();
            let mut k = size;
            let mut advanced = false;
            while k > 0 {
                k -= 1;
                if support[k] < n - size + k {
                    support[k] += 1;
                    for t in k + 1..size {
                        support[t] = support[t - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    ControlFlow::Continue(())
}

fn kernel_of(fragment: &[Element], k: i64, label: SubgroupLabel) -> SubgroupEnumeration {
    SubgroupEnumeration {
        label,
        elements: fragment
            .iter()
            .filter(|g| g.scalar_mul(k).is_zero())
            .cloned()
            .collect(),
    }
}

/// `G_2` over a precomputed fragment.
pub fn two_torsion_of(fragment: &[Element]) -> SubgroupEnumeration {
    kernel_of(fragment, 2, SubgroupLabel::TwoTorsion)
}

/// `G_4` over a precomputed fragment.
pub fn four_torsion_of(fragment: &[Element]) -> SubgroupEnumeration {
    kernel_of(fragment, 4, SubgroupLabel::FourTorsion)
}

/// `2G` over a precomputed fragment, deduplicated and sorted.
pub fn double_image_of(fragment: &[Element]) -> SubgroupEnumeration {
    let set: BTreeSet<Element> = fragment.iter().map(Element::double).collect();
    SubgroupEnumeration {
        label: SubgroupLabel::Doubles,
        elements: set.into_iter().collect(),
    }
}

pub fn two_torsion(group: &Group, bound: u64) -> Result<SubgroupEnumeration, Error> {
    Ok(two_torsion_of(&enumerate_fragment(group, bound, DEFAULT_FRAGMENT_CAP)?))
}

pub fn four_torsion(group: &Group, bound: u64) -> Result<SubgroupEnumeration, Error> {
    Ok(four_torsion_of(&enumerate_fragment(group, bound, DEFAULT_FRAGMENT_CAP)?))
}

pub fn double_image(group: &Group, bound: u64) -> Result<SubgroupEnumeration, Error> {
    Ok(double_image_of(&enumerate_fragment(group, bound, DEFAULT_FRAGMENT_CAP)?))
}

/// All `x` in `domain` with `2x = c`.
pub fn solve_double(c: &Element, domain: &[Element]) -> Vec<Element> {
    domain.iter().filter(|x| &x.double() == c).cloned().collect()
}

/// All `y` in `domain` with `4y = d`.
pub fn solve_quadruple(d: &Element, domain: &[Element]) -> Vec<Element> {
    domain
        .iter()
        .filter(|y| &y.scalar_mul(4) == d)
        .cloned()
        .collect()
}

/// `X + X`, doubles included, sorted and deduplicated.
pub fn sumset(xs: &[Element]) -> Result<Vec<Element>, Error> {
    let mut out = BTreeSet::new();
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i..] {
            out.insert(x.add(y)?);
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> Group {
        s.parse().unwrap()
    }

    fn els(g: &Group, raws: &[&str]) -> Vec<Element> {
        raws.iter().map(|r| g.parse_element(r).unwrap()).collect()
    }

    #[test]
    fn fragment_sizes() {
        assert_eq!(enumerate_fragment(&grp("Z/2 Z/2"), 5, 100).unwrap().len(), 4);
        assert_eq!(enumerate_fragment(&grp("Z/4 Z"), 1, 100).unwrap().len(), 12);
        let trivial = enumerate_fragment(&grp(""), 3, 100).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_zero());
    }

    #[test]
    fn fragment_is_sorted_without_duplicates() {
        let f = enumerate_fragment(&grp("Z/3 Z Z/2"), 2, 1000).unwrap();
        assert_eq!(f.len(), 30);
        assert!(f.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fragment_cap_is_reported() {
        let err = enumerate_fragment(&grp("Z/4 Z/4 Z/4"), 0, 10).unwrap_err();
        match err {
            Error::Resource(r) => assert_eq!(r.cap, 10),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn z8_structure() {
        let g = grp("Z/8");
        assert_eq!(two_torsion(&g, 0).unwrap().elements, els(&g, &["0", "4"]));
        assert_eq!(
            double_image(&g, 0).unwrap().elements,
            els(&g, &["0", "2", "4", "6"])
        );
    }

    #[test]
    fn odd_torsion_has_trivial_two_torsion() {
        let g = grp("Z/3 Z/3 Z/3");
        assert_eq!(two_torsion(&g, 0).unwrap().elements, vec![g.zero()]);
    }

    #[test]
    fn equation_solutions() {
        let g = grp("Z/8");
        let dom = enumerate_fragment(&g, 0, 100).unwrap();
        let four = g.parse_element("4").unwrap();
        assert_eq!(solve_double(&four, &dom), els(&g, &["2", "6"]));

        let g16 = grp("Z/16");
        let dom16 = enumerate_fragment(&g16, 0, 100).unwrap();
        assert_eq!(
            solve_quadruple(&g16.zero(), &dom16),
            els(&g16, &["0", "4", "8", "12"])
        );

        let g3 = grp("Z/3");
        let dom3 = enumerate_fragment(&g3, 0, 100).unwrap();
        assert_eq!(
            solve_double(&g3.parse_element("1").unwrap(), &dom3),
            els(&g3, &["2"])
        );
    }

    #[test]
    fn sumsets() {
        let g = grp("Z/4 Z/4 Z");
        let x = els(&g, &["1,0,1", "3,2,1"]);
        assert_eq!(sumset(&x).unwrap(), els(&g, &["2,0,2", "0,2,2"]));
        assert_eq!(sumset(&x[..1]).unwrap(), els(&g, &["2,0,2"]));
        assert!(sumset(&[]).unwrap().is_empty());

        let b = grp("Z/2 Z/2");
        let x = els(&b, &["0,0", "1,1"]);
        assert_eq!(sumset(&x).unwrap(), x);
    }

    #[test]
    fn shortlex_visits_every_element_once() {
        let g = grp("Z/3 Z Z/2");
        let mut seen = Vec::new();
        let _ = visit_shortlex::<()>(&g, 2, |e| {
            seen.push(e);
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 30);
        assert!(seen[0].is_zero());
        assert!(seen.windows(2).all(|w| w[0].support_len() <= w[1].support_len()));
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, enumerate_fragment(&g, 2, 100).unwrap());
    }

    #[test]
    fn shortlex_stops_early_on_huge_groups() {
        let g = Group::from(crate::group::GroupSpec::cyclic_power(4, 64));
        let mut count = 0;
        let r = visit_shortlex(&g, 0, |e| {
            count += 1;
            if e.support_len() == 1 { ControlFlow::Break(e) } else { ControlFlow::Continue(()) }
        });
        assert_eq!(r, ControlFlow::Break(g.basis(0).unwrap()));
        assert_eq!(count, 2);
    }

    #[test]
    fn negation_closure_of_g2_and_2g() {
        let g = grp("Z/4 Z/6 Z/8");
        let frag = enumerate_fragment(&g, 0, 10_000).unwrap();
        for sub in [two_torsion_of(&frag), double_image_of(&frag)] {
            for e in &sub.elements {
                assert!(sub.contains(&e.neg()));
            }
        }
    }
}
