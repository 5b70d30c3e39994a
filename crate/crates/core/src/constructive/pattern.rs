use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Element, Group};

/// A finite coefficient sequence, applied to a sequence of group elements by
/// truncated dot product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternVec(Vec<i64>);

impl PatternVec {
    pub fn new(entries: Vec<i64>) -> Self {
        PatternVec(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for PatternVec {
    fn from(v: Vec<i64>) -> Self {
        PatternVec(v)
    }
}

impl fmt::Display for PatternVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `sum_{i < min(|eps|, |g|)} eps_i * g_i`; the zero of `group` when either side is empty.
pub fn pattern_apply(group: &Group, eps: &PatternVec, g: &[Element]) -> Result<Element, Error> {
    let mut acc = group.zero();
    for (&e, x) in eps.0.iter().zip(g) {
        acc = acc.add(&x.scalar_mul(e))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_sum_and_truncation() {
        let g: Group = "Z/4 Z/4".parse().unwrap();
        let e = [g.basis(0).unwrap(), g.basis(1).unwrap()];
        assert_eq!(
            pattern_apply(&g, &PatternVec::new(vec![1, 2]), &e).unwrap(),
            g.parse_element("1,2").unwrap()
        );
        assert_eq!(
            pattern_apply(&g, &PatternVec::new(vec![3]), &e).unwrap(),
            g.parse_element("3,0").unwrap()
        );
        assert_eq!(pattern_apply(&g, &PatternVec::new(vec![]), &e).unwrap(), g.zero());
        assert_eq!(pattern_apply(&g, &PatternVec::new(vec![1, 1]), &[]).unwrap(), g.zero());
    }

    #[test]
    fn s_f_for_single_block() {
        // f = 0 gives (eps_0, delta_0) = (1, 2): e_a + 2 e_b.
        let g: Group = "Z/4 Z/4 Z/4 Z/4".parse().unwrap();
        let (a, b) = (g.basis(1).unwrap(), g.basis(3).unwrap());
        let x = pattern_apply(&g, &PatternVec::new(vec![1, 2]), &[a.clone(), b.clone()]).unwrap();
        assert_eq!(x, a.add(&b.scalar_mul(2)).unwrap());
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let g: Group = "Z/4".parse().unwrap();
        let h: Group = "Z/5".parse().unwrap();
        assert!(pattern_apply(&g, &PatternVec::new(vec![1]), &[h.basis(0).unwrap()]).is_err());
    }
}
