//! Constructions that turn a monochromatic index set into an explicit
//! witness. Each constructor re-checks its output with [`verify_witness`]
//! before returning it.

use crate::coloring::{induced_tuple_coloring, Coloring, InducedMode, TupleColor};
use crate::constructive::pattern::{pattern_apply, PatternVec};
use crate::constructive::ramsey::search_monochromatic;
use crate::constructive::sequences::{all_functions, epsilon_delta_point, IndependentSequence, SequenceKind};
use crate::constructive::Construction;
use crate::error::Error;
use crate::group::{Element, Factor, Group};
use crate::limits::Limits;
use crate::search::{verify_witness, Witness};

/// `|Y|` the pattern construction needs once `t_i = t_j` is known:
/// `r - j` a-indices, `n` b-blocks of `j - i`, `2i` c-indices, then `r - i`
/// trailing indices so every tuple used has length `2r`.
pub fn leader_russell_requirement(n: usize, r: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j <= r);
    2 * r + n.saturating_sub(1) * (j - i)
}

fn bits(f: &[u8]) -> String {
    f.iter().map(|b| char::from(b'0' + b)).collect()
}

fn sum(group: &Group, xs: impl IntoIterator<Item = Element>) -> Element {
    xs.into_iter().fold(group.zero(), |acc, x| acc.plus(&x))
}

/// Verifies `points` as a witness of the expected size and packages it.
fn finish(
    stage: &'static str,
    c: &Coloring,
    labelled: Vec<(String, Element)>,
    indices: Vec<usize>,
    expected: usize,
    mut log: Vec<String>,
) -> Result<Construction, Error> {
    let mut elements: Vec<Element> = labelled.iter().map(|(_, x)| x.clone()).collect();
    elements.sort();
    elements.dedup();
    if elements.len() != expected {
        return Err(Error::construction(
            stage,
            format!("only {} of the {expected} constructed points are distinct", elements.len()),
        ));
    }
    let (mono, color) = verify_witness(&elements, c)?;
    let Some(color) = color.filter(|_| mono) else {
        return Err(Error::construction(stage, "constructed set failed verification"));
    };
    log.push(format!("verified: X + X has colour {color}"));
    Ok(Construction {
        witness: Witness { elements, color },
        labelled,
        indices,
        log,
    })
}

/// Builds an `n`-element witness for a colouring with at most `r` colours,
/// from a `{1,2,4}`-unique sequence.
///
/// The `2r`-tuples of sequence indices are coloured by the colours of the
/// patterns `(4^(r-i), 2^(2i))`. The search looks for the smallest
/// monochromatic `Y` whose colour repeats at some `i < j` with `Y` big
/// enough for the blocks that `j - i` demands.
pub fn leader_russell_construct(
    c: &Coloring,
    r: usize,
    n: usize,
    seq: &IndependentSequence,
    limits: &Limits,
) -> Result<Construction, Error> {
    if r == 0 || n == 0 {
        return Err(Error::Structural("colour count and witness size must be at least 1".into()));
    }
    if seq.kind != SequenceKind::Unique124 {
        return Err(Error::Structural("the pattern construction needs a {1,2,4}-unique sequence".into()));
    }
    let d = induced_tuple_coloring(c, seq.terms.clone(), InducedMode::LeaderRussell { r })?;
    let group = seq.terms[0].group().clone();
    let meter = limits.meter("monochromatic set for the pattern construction");
    let mut log = vec![format!(
        "tuple colouring of arity {} over {} sequence terms",
        2 * r,
        seq.terms.len()
    )];

    // Best pair (i, j) of equal pattern colours for a given |Y|.
    let pair_within = |t: &TupleColor, m: usize| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for j in 1..t.len() {
            for i in 0..j {
                if t[i] == t[j]
                    && leader_russell_requirement(n, r, i, j) <= m
                    && best.is_none_or(|(bi, bj)| j - i < bj - bi)
                {
                    best = Some((i, j));
                }
            }
        }
        best
    };

    let max_target = leader_russell_requirement(n, r, 0, r).min(seq.terms.len());
    let mut found = None;
    let min_target = leader_russell_requirement(n, r, 0, 1);
    for m in min_target..=max_target {
        let accept = |t: &TupleColor| pair_within(t, m).is_some();
        if let Some(y) = search_monochromatic(&d, m, &accept, &meter)? {
            log.push(format!("|Y| = {m}: Y = {:?}", y.indices));
            found = Some(y);
            break;
        }
        log.push(format!("|Y| = {m}: no monochromatic set with a usable colour"));
    }
    let Some(y) = found else {
        return Err(Error::construction(
            "ramsey",
            format!(
                "no monochromatic index set with a repeated pattern colour among {} terms \
                 (sizes up to {max_target}, {} nodes)",
                seq.terms.len(),
                meter.nodes()
            ),
        ));
    };
    let t = y.color.clone().expect("|Y| >= 2r gives a tuple colour");
    let (i, j) = pair_within(&t, y.indices.len()).expect("accepted colour has a pair");
    log.push(format!("pattern colours t_{i} = t_{j} = {}", t[i]));

    let need = leader_russell_requirement(n, r, i, j);
    let ys = &y.indices[..need];
    let w = j - i;
    let a = &ys[..r - j];
    let b = &ys[r - j..r - j + n * w];
    let cs = &ys[r - j + n * w..r - j + n * w + 2 * i];
    log.push(format!("a = {a:?}, b = {b:?}, c = {cs:?}, tail = {:?}", &ys[need - (r - i)..]));

    let g = |k: usize| seq.terms[k].clone();
    let base = sum(&group, a.iter().chain(cs).map(|&k| g(k)))
        .plus(&sum(&group, a.iter().map(|&k| g(k))));
    let labelled: Vec<(String, Element)> = (0..n)
        .map(|k| {
            let block = &b[k * w..(k + 1) * w];
            let x = base.plus(&sum(&group, block.iter().map(|&q| g(q).double())));
            (format!("x_{}", k + 1), x)
        })
        .collect();
    finish("leader-russell", c, labelled, ys.to_vec(), n, log)
}

/// Builds a `2^n`-element witness from halves `z_k` of independent
/// order-two elements.
///
/// Sequence indices are coloured by `d(k_1..k_n) = c(2z_{k_1} + ... + 2z_{k_n})`.
/// From a monochromatic `Y` of size `2n` the first half gives `i_1..i_n` and
/// the second half `j_1..j_n`.
pub fn order2_construct(
    c: &Coloring,
    n: usize,
    zseq: &IndependentSequence,
    limits: &Limits,
) -> Result<Construction, Error> {
    if n == 0 {
        return Err(Error::Structural("block length must be at least 1".into()));
    }
    if zseq.kind != SequenceKind::OrderTwoHalves {
        return Err(Error::Structural("the order-two construction needs a sequence of halves".into()));
    }
    let z = &zseq.halves;
    let d = induced_tuple_coloring(c, z.clone(), InducedMode::SumOfDoubles { arity: n })?;
    let meter = limits.meter("monochromatic set for the order-two construction");
    let Some(y) = search_monochromatic(&d, 2 * n, &|_| true, &meter)? else {
        return Err(Error::construction(
            "ramsey",
            format!("no monochromatic {}-set among {} terms ({} nodes)", 2 * n, z.len(), meter.nodes()),
        ));
    };
    let group = z[0].group().clone();
    let (is, js) = y.indices.split_at(n);
    let zi: Vec<Element> = is.iter().map(|&k| z[k].clone()).collect();
    let zj: Vec<Element> = js.iter().map(|&k| z[k].clone()).collect();
    let mut log = vec![format!("Y = {:?}; i = {is:?}, j = {js:?}", y.indices)];
    if let Some(col) = &y.color {
        log.push(format!("tuple colour {}", col[0]));
    }
    let labelled = all_functions(n)
        .into_iter()
        .map(|f| Ok((format!("f={}", bits(&f)), epsilon_delta_point(&group, &f, &zi, &zj)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    finish("order2", c, labelled, y.indices, 1 << n, log)
}

/// `s_f = (eps_{f(1)}, delta_{f(1)}, ..., eps_{f(n)}, delta_{f(n)})` with
/// `eps_0 = 1, delta_0 = 2, eps_1 = 3, delta_1 = 0`.
pub fn s_pattern(f: &[u8]) -> PatternVec {
    PatternVec::new(
        f.iter()
            .flat_map(|&b| if b == 0 { [1, 2] } else { [3, 0] })
            .collect(),
    )
}

/// Builds a `2^n`-element witness in `(Z/4)^K` from basis vectors.
///
/// Basis indices are coloured by `d(a_1..a_n) = c(2e_{a_1} + ... + 2e_{a_n})`;
/// the `2n` smallest members of a monochromatic `Y` give `alpha` and
/// `x_f = s_f * (e_alpha)`.
pub fn prop42_construct(c: &Coloring, group: &Group, n: usize, limits: &Limits) -> Result<Construction, Error> {
    if n == 0 {
        return Err(Error::Structural("block length must be at least 1".into()));
    }
    if group.factors().iter().any(|f| *f != Factor::Cyclic(4)) {
        return Err(Error::Structural(format!("`{group}` is not a power of Z/4")));
    }
    let basis = (0..group.rank()).map(|k| group.basis(k)).collect::<Result<Vec<_>, _>>()?;
    let d = induced_tuple_coloring(c, basis.clone(), InducedMode::SumOfDoubles { arity: n })?;
    let meter = limits.meter("monochromatic set for the Z/4 construction");
    let Some(y) = search_monochromatic(&d, 2 * n, &|_| true, &meter)? else {
        return Err(Error::construction(
            "ramsey",
            format!("no monochromatic {}-set among {} basis vectors ({} nodes)", 2 * n, basis.len(), meter.nodes()),
        ));
    };
    let alpha: Vec<Element> = y.indices.iter().map(|&k| basis[k].clone()).collect();
    let log = vec![format!("alpha = {:?}", y.indices)];
    let labelled = all_functions(n)
        .into_iter()
        .map(|f| Ok((format!("f={}", bits(&f)), pattern_apply(group, &s_pattern(&f), &alpha)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    finish("prop42", c, labelled, y.indices, 1 << n, log)
}
