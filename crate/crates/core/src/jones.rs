//! Kauffman-bracket state sum for the unnormalized Jones polynomial.
//!
//! Deliberately self-contained: loops are counted with a private union-find
//! straight off the PD tuples, so a mistake in the cube code cannot leak in.

use std::collections::BTreeMap;

use crate::error::DiagramError;
use crate::link::LinkDiagram;
use crate::poly::LaurentPolynomial;

/// The bracket of a diagram as a Laurent polynomial in A, with every
/// closed loop weighted by δ = −A² − A⁻² (and the empty diagram equal to 1).
///
/// Crossing `[a, b, c, d]` expands as `A·⟨a~b, c~d⟩ + A⁻¹·⟨a~d, b~c⟩`.
pub fn kauffman_bracket(d: &LinkDiagram) -> LaurentPolynomial {
    let pd = d.pd();
    let n = pd.len();
    let mut labels: Vec<u32> = pd.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let idx = |a: u32| labels.binary_search(&a).unwrap();

    // histogram of (#A − #B, loop count) over all 2ⁿ states
    let mut hist: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    let mut parent = vec![0usize; labels.len()];
    for state in 0u64..(1u64 << n) {
        for (k, p) in parent.iter_mut().enumerate() {
            *p = k;
        }
        let mut loops = labels.len();
        for (c, x) in pd.iter().enumerate() {
            let b_smoothing = (state >> c) & 1 == 1;
            let joins = if b_smoothing { [(x[0], x[3]), (x[1], x[2])] } else { [(x[0], x[1]), (x[2], x[3])] };
            for (u, v) in joins {
                let (ru, rv) = (root(&mut parent, idx(u)), root(&mut parent, idx(v)));
                if ru != rv {
                    parent[ru] = rv;
                    loops -= 1;
                }
            }
        }
        let b = state.count_ones() as i64;
        *hist.entry(((n as i64) - 2 * b, loops + d.loops().len())).or_insert(0) += 1;
    }

    let delta = LaurentPolynomial::from_terms([(-1, 2), (-1, -2)]);
    let mut total = LaurentPolynomial::zero();
    for ((a_exp, loops), count) in hist {
        let term = &LaurentPolynomial::monomial(count, a_exp) * &delta.pow(loops as u32);
        total = &total + &term;
    }
    total
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Unnormalized Jones polynomial in the Khovanov q-convention (unknot ↦
/// q + q⁻¹), obtained from the bracket via (−A³)^(−w) and A² = −q⁻¹.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPolynomial, DiagramError> {
    jones_with_limit(d, crate::cube::max_crossings())
}

pub fn jones_with_limit(d: &LinkDiagram, limit: usize) -> Result<LaurentPolynomial, DiagramError> {
    if d.crossing_count() > limit {
        return Err(DiagramError::TooManyCrossings { crossings: d.crossing_count(), limit });
    }
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = &kauffman_bracket(d) * &LaurentPolynomial::monomial(sign, -3 * w);
    let mut out = LaurentPolynomial::zero();
    for (c, e) in normalized.terms() {
        assert!(e % 2 == 0, "odd power of A in a normalized bracket");
        let k = e / 2;
        out.add_term(if k.rem_euclid(2) == 0 { c } else { -c }, -k);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(jones(&LinkDiagram::unknot()).unwrap(), p(&[(1, -1), (1, 1)]));
        assert_eq!(jones(&LinkDiagram::unlink(2)).unwrap(), p(&[(1, -1), (1, 1)]).pow(2));
        assert_eq!(jones(&LinkDiagram::empty()).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn right_trefoil() {
        let t = LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap();
        let j = jones(&t).unwrap();
        assert_eq!(j.to_string(), "q^1 + q^3 + q^5 - q^9");
        assert_eq!(jones(&t.mirror()).unwrap(), j.invert_variable());
    }

    #[test]
    fn crossing_limit() {
        let t = LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap();
        assert!(matches!(jones_with_limit(&t, 2), Err(DiagramError::TooManyCrossings { .. })));
    }
}
