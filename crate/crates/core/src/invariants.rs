//! Numerical invariants read off a homology table, and the inequalities
//! between them that a ribbon concordance forces.

use serde::Serialize;

use crate::homology::HomologyTable;

/// Gradings of the nonzero part of Kh. Everything is `None` for zero
/// homology (the empty link).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub ring: String,
    pub q_min: Option<i32>,
    pub q_max: Option<i32>,
    /// q_max − q_min.
    pub breadth: Option<i32>,
    /// Spread of δ = j − 2i.
    pub delta_width: Option<i32>,
    pub is_thin: Option<bool>,
    pub poincare: String,
}

pub fn invariants(h: &HomologyTable) -> InvariantReport {
    let nonzero: Vec<_> = h.groups().iter().filter(|(_, g)| !g.is_zero()).map(|(b, _)| *b).collect();
    let q_min = nonzero.iter().map(|b| b.j).min();
    let q_max = nonzero.iter().map(|b| b.j).max();
    let d_min = nonzero.iter().map(|b| b.j - 2 * b.i).min();
    let d_max = nonzero.iter().map(|b| b.j - 2 * b.i).max();
    let delta_width = d_min.zip(d_max).map(|(a, b)| b - a);
    InvariantReport {
        ring: h.ring().to_string(),
        q_min,
        q_max,
        breadth: q_min.zip(q_max).map(|(a, b)| b - a),
        delta_width,
        is_thin: delta_width.map(|w| w == 2),
        poincare: h.poincare_polynomial(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantComparison {
    /// q_min(L₁) ≤ q_min(L₀)
    pub q_min: bool,
    /// q_max(L₁) ≥ q_max(L₀)
    pub q_max: bool,
    /// b(L₁) ≥ b(L₀)
    pub breadth: bool,
    /// w(L₁) ≥ w(L₀)
    pub delta_width: bool,
    /// All four hold, as they must if L₀ is ribbon concordant to L₁.
    pub consistent: bool,
}

/// Compares L₀ (`r0`) with L₁ (`r1`). Undefined invariants fail their check.
pub fn compare_invariants(r0: &InvariantReport, r1: &InvariantReport) -> InvariantComparison {
    let le = |a: Option<i32>, b: Option<i32>| matches!((a, b), (Some(a), Some(b)) if a <= b);
    let q_min = le(r1.q_min, r0.q_min);
    let q_max = le(r0.q_max, r1.q_max);
    let breadth = le(r0.breadth, r1.breadth);
    let delta_width = le(r0.delta_width, r1.delta_width);
    InvariantComparison { q_min, q_max, breadth, delta_width, consistent: q_min && q_max && breadth && delta_width }
}
