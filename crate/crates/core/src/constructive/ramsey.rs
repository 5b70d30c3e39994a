//! Finite stand-in for the infinite Ramsey step: find `Y` with every
//! increasing tuple from `Y` sharing one colour.

use std::collections::HashMap;

use crate::coloring::{TupleColor, TupleColoring};
use crate::error::Error;
use crate::limits::{Limits, Meter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonochromaticSet {
    /// Increasing indices.
    pub indices: Vec<usize>,
    /// Common colour, `None` when `Y` is too small to contain a tuple.
    pub color: Option<TupleColor>,
}

/// Tuple colours interned to small ids for the backtracking loop.
struct TupleCache<'c, 'a> {
    d: &'c TupleColoring<'a>,
    ids: HashMap<Vec<usize>, usize>,
    colors: Vec<TupleColor>,
    by_color: HashMap<TupleColor, usize>,
}

impl<'c, 'a> TupleCache<'c, 'a> {
    fn id(&mut self, t: &[usize]) -> Result<usize, Error> {
        if let Some(&i) = self.ids.get(t) {
            return Ok(i);
        }
        let c = self.d.color(t)?;
        let next = self.colors.len();
        let id = *self.by_color.entry(c.clone()).or_insert(next);
        if id == next {
            self.colors.push(c);
        }
        self.ids.insert(t.to_vec(), id);
        Ok(id)
    }
}

/// All `(k-1)`-subsets of `chosen`, each followed by `last`.
fn tuples_ending_in(chosen: &[usize], k: usize, last: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(chosen: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, last: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == k {
            let mut t = cur.clone();
            t.push(last);
            out.push(t);
            return;
        }
        for p in start..chosen.len() {
            cur.push(chosen[p]);
            rec(chosen, k, p + 1, cur, last, out);
            cur.pop();
        }
    }
    rec(chosen, k, 0, &mut Vec::with_capacity(k), last, out)
}

/// Lexicographically least `Y` of size `target` that is monochromatic for
/// `d` and whose colour passes `accept`. `Ok(None)` means the index domain
/// was exhausted.
pub(crate) fn search_monochromatic(
    d: &TupleColoring<'_>,
    target: usize,
    accept: &dyn Fn(&TupleColor) -> bool,
    meter: &Meter,
) -> Result<Option<MonochromaticSet>, Error> {
    let k = d.arity;
    if target > d.domain_len {
        return Ok(None);
    }
    if target < k || k == 0 {
        // nothing to colour
        return Ok(Some(MonochromaticSet {
            indices: (0..target).collect(),
            color: None,
        }));
    }
    let mut cache = TupleCache {
        d,
        ids: HashMap::new(),
        colors: Vec::new(),
        by_color: HashMap::new(),
    };

    struct Ctx<'m> {
        k: usize,
        target: usize,
        n: usize,
        meter: &'m Meter,
    }

    fn rec(
        ctx: &Ctx<'_>,
        cache: &mut TupleCache<'_, '_>,
        accept: &dyn Fn(&TupleColor) -> bool,
        chosen: &mut Vec<usize>,
        colour: &mut Option<usize>,
        scratch: &mut Vec<Vec<usize>>,
    ) -> Result<bool, Error> {
        if chosen.len() == ctx.target {
            return Ok(true);
        }
        let start = chosen.last().map_or(0, |&v| v + 1);
        let need = ctx.target - chosen.len();
        for v in start..ctx.n {
            if ctx.n - v < need {
                break;
            }
            ctx.meter.tick(1)?;
            scratch.clear();
            if chosen.len() + 1 >= ctx.k {
                tuples_ending_in(chosen, ctx.k, v, scratch);
            }
            let was_unset = colour.is_none();
            let mut ok = true;
            for t in scratch.iter() {
                let id = cache.id(t)?;
                match *colour {
                    None => {
                        if !accept(&cache.colors[id]) {
                            ok = false;
                            break;
                        }
                        *colour = Some(id);
                    }
                    Some(c) if c != id => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                }
            }
            if ok {
                chosen.push(v);
                let mut sub = Vec::new();
                if rec(ctx, cache, accept, chosen, colour, &mut sub)? {
                    return Ok(true);
                }
                chosen.pop();
            }
            if was_unset {
                *colour = None;
            }
        }
        Ok(false)
    }

    let ctx = Ctx {
        k,
        target,
        n: d.domain_len,
        meter,
    };
    let mut chosen = Vec::with_capacity(target);
    let mut colour = None;
    let found = rec(&ctx, &mut cache, accept, &mut chosen, &mut colour, &mut Vec::new())?;
    Ok(found.then(|| MonochromaticSet {
        indices: chosen,
        color: colour.map(|c| cache.colors[c].clone()),
    }))
}

/// Finds the least `Y` with `|Y| = target` and all increasing `arity`-tuples
/// from `Y` of one colour. `Ok(None)` is an exhaustive failure on the
/// domain; running out of budget is [`Error::Resource`] instead.
pub fn ramsey_monochromatic_subset(
    d: &TupleColoring<'_>,
    target: usize,
    limits: &Limits,
) -> Result<Option<MonochromaticSet>, Error> {
    let meter = limits.meter(format!("monochromatic {target}-set search"));
    search_monochromatic(d, target, &|_| true, &meter)
}
