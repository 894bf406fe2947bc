//! Logarithmic negativity of the reduced φψ state.
//!
//! Tracing the unobserved −k ψ-mode out of the first-order state leaves
//!
//! ρ = (1 − γ) Σₙ γⁿ [ |0,n⟩⟨0,n| + c√(1−γ)√(n+1) (|1,n+1⟩⟨0,n| + h.c.)
//!                    + c²(1−γ)(n+1) |1,n+1⟩⟨1,n+1| ],
//!
//! with c = λA(k) and γ the squeezing weight. Transposing the φ factor maps
//! the coherences onto |0,n+1⟩⟨1,n|, so the partial transpose splits into the
//! isolated entry |0,0⟩ and 2×2 sectors {|1,n⟩, |0,n+1⟩}, n ≥ 0. Each sector has
//! determinant −(1−γ)³γ²ⁿc² and contributes exactly one negative eigenvalue.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigenvalues, SymmetricMatrix};
use crate::special::{geometric_weighted_tail_bound, pow_usize};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SECTOR_CAP: usize = 1_000_000;
pub const DENSE_CAP: usize = 2000;
const JACOBI_OFF_TOL: f64 = 1e-13;

/// How the spectrum of the partial transpose is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Exact eigenvalues of each 2×2 sector, state normalized to unit trace.
    #[default]
    Exact,
    /// ν± and the closed-form E_N exactly as printed, unnormalized state.
    PaperLiteral,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::PaperLiteral => "paper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    /// γ ∈ [0, 1)
    pub gamma: f64,
    /// c = λA ≥ 0
    pub c: f64,
    pub mode: Mode,
}

impl ReducedState {
    pub fn new(gamma: f64, c: f64, mode: Mode) -> Result<Self> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::Domain("gamma must lie in [0, 1)"));
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::Domain("c must be finite and >= 0"));
        }
        Ok(ReducedState { gamma, c, mode })
    }

    /// Trace of the unnormalized state, 1 + c².
    pub fn trace(&self) -> f64 {
        1.0 + self.c * self.c
    }

    fn normalization(&self) -> f64 {
        match self.mode {
            Mode::Exact => self.trace(),
            Mode::PaperLiteral => 1.0,
        }
    }
}

/// Sector n of the partial transpose of the unnormalized state, basis
/// {|1,n⟩, |0,n+1⟩}. Entries carry the weight (1 − γ)γⁿ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtBlock {
    pub sector: usize,
    /// (1 − γ)γⁿ
    pub weight: f64,
    /// ⟨1,n|ρᵀ|1,n⟩ = (1−γ)²c² n γⁿ⁻¹, inherited from term n − 1.
    pub upper: f64,
    /// ⟨1,n|ρᵀ|0,n+1⟩ = (1−γ)γⁿ c√(1−γ)√(n+1).
    pub coupling: f64,
    /// ⟨0,n+1|ρᵀ|0,n+1⟩ = (1−γ)γⁿ⁺¹.
    pub lower: f64,
}

impl PtBlock {
    pub fn trace(&self) -> f64 {
        self.upper + self.lower
    }

    /// Exact determinant, −(1−γ)³γ²ⁿc², free of the cancellation in
    /// upper·lower − coupling².
    fn determinant(&self, state: &ReducedState) -> f64 {
        let g = state.gamma;
        -self.weight * self.weight * state.c * state.c * (1.0 - g)
    }
}

/// The 2×2 sector n. Identical in both modes; the modes differ only in how
/// the eigenvalues are read off.
///
/// Entries are assembled from powers of γ directly, so γ = 0 needs no special
/// case: sector 1 then holds the c² population of |1,1⟩ and all higher
/// sectors vanish.
pub fn pt_block(n: usize, state: &ReducedState) -> PtBlock {
    let g = state.gamma;
    let c = state.c;
    let weight = (1.0 - g) * pow_usize(g, n);
    let upper = if n == 0 {
        0.0
    } else {
        (1.0 - g) * (1.0 - g) * c * c * n as f64 * pow_usize(g, n - 1)
    };
    PtBlock {
        sector: n,
        weight,
        upper,
        coupling: weight * c * (1.0 - g).sqrt() * ((n + 1) as f64).sqrt(),
        lower: weight * g,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtBlockSpectrum {
    pub sector: usize,
    pub nu_plus: f64,
    pub nu_minus: f64,
}

/// Eigenvalue pair of sector n (unnormalized state).
///
/// Exact mode diagonalizes [`pt_block`]. Paper-literal mode evaluates
/// ν± = (1−γ)γⁿ/2 [P ± √Zₙ], P = c²n(1−γ)/γ, Zₙ = P² + 4c²(1−γ).
pub fn block_eigenvalues(n: usize, state: &ReducedState) -> PtBlockSpectrum {
    let block = pt_block(n, state);
    match state.mode {
        Mode::Exact => {
            let mean = 0.5 * (block.upper + block.lower);
            let half_gap = 0.5 * (block.upper - block.lower);
            let nu_plus = mean + half_gap.hypot(block.coupling);
            let nu_minus = if nu_plus > 0.0 { block.determinant(state) / nu_plus } else { 0.0 };
            PtBlockSpectrum { sector: n, nu_plus, nu_minus }
        }
        Mode::PaperLiteral => {
            let (wp, wz) = paper_terms(n, state);
            let nu_plus = 0.5 * (wp + wz);
            let gap = 2.0 * block.weight * block.weight * state.c * state.c * (1.0 - state.gamma);
            let nu_minus = if nu_plus > 0.0 { -gap / (wp + wz) } else { 0.0 };
            PtBlockSpectrum { sector: n, nu_plus, nu_minus }
        }
    }
}

/// (1−γ)γⁿ·P and (1−γ)γⁿ·√Zₙ of the printed eigenvalue formula.
fn paper_terms(n: usize, state: &ReducedState) -> (f64, f64) {
    let g = state.gamma;
    let c = state.c;
    let w = (1.0 - g) * pow_usize(g, n);
    let wp = if n == 0 { 0.0 } else { (1.0 - g) * (1.0 - g) * c * c * n as f64 * pow_usize(g, n - 1) };
    let wz = wp.hypot(2.0 * w * c * (1.0 - g).sqrt());
    (wp, wz)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    /// 𝒩 = −Σ ν₋
    pub neg: f64,
    /// E_N = log₂(1 + 2𝒩)
    pub log_neg: f64,
    pub terms_used: usize,
    /// Certified bound on the omitted sectors.
    pub tail_bound: f64,
    pub mode: Mode,
    /// Paper-literal only: log₂[1 + c² + γ + Σ (1−γ)γⁿ√Zₙ].
    pub paper_closed_form: Option<f64>,
}

pub fn negativity(state: &ReducedState, tol: f64) -> Result<NegativityResult> {
    negativity_with_cap(state, tol, DEFAULT_SECTOR_CAP)
}

/// Sums |ν₋(n)| until the remaining sectors are certified below `tol`.
///
/// Each sector obeys |ν₋(n)| ≤ (1−γ)γⁿ c√(1−γ)√(n+1) in both modes, which is
/// what the tail bound majorizes.
pub fn negativity_with_cap(state: &ReducedState, tol: f64, sector_cap: usize) -> Result<NegativityResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain("tol must be > 0"));
    }
    let g = state.gamma;
    let c = state.c;
    let norm = state.normalization();
    let bound_coeff = c * (1.0 - g).sqrt();
    let paper = state.mode == Mode::PaperLiteral;

    let mut neg_sum = 0.0;
    let mut z_sum = 0.0;
    let mut tail = f64::INFINITY;
    let mut terms_used = 0;

    for n in 0..sector_cap {
        let spec = block_eigenvalues(n, state);
        neg_sum += -spec.nu_minus;
        if paper {
            z_sum += paper_terms(n, state).1;
        }
        terms_used = n + 1;

        let n0 = n + 1;
        tail = geometric_weighted_tail_bound(g, bound_coeff, n0)? / norm;
        let z_tail = if paper {
            c * c * pow_usize(g, n0 - 1) * (n0 as f64 - (n0 - 1) as f64 * g) + 2.0 * bound_coeff * pow_usize(g, n0)
        } else {
            0.0
        };
        if tail <= tol && z_tail <= tol {
            break;
        }
    }
    if !(tail <= tol) {
        return Err(Error::Tolerance { what: "negativity tail bound", value: tail, limit: tol });
    }

    let neg = neg_sum / norm;
    Ok(NegativityResult {
        neg,
        log_neg: (2.0 * neg).ln_1p() / LN_2,
        terms_used,
        tail_bound: tail,
        mode: state.mode,
        paper_closed_form: paper.then(|| (c * c + g + z_sum).ln_1p() / LN_2),
    })
}

/// Eigenvalues (ascending) of the partial transpose of the reduced state,
/// built densely from the tripartite pure state truncated at n_max squeezed
/// terms: amplitudes √(1−γ)γ^{n/2}|0; n, n⟩ + c(1−γ)γ^{n/2}√(n+1)|1; n+1, n⟩.
/// The −k mode is traced out, φ is transposed by index exchange, and the
/// result is diagonalized by cyclic Jacobi. Exact mode divides by the trace
/// of the truncated matrix.
pub fn dense_pt_oracle(state: &ReducedState, n_max: usize) -> Result<Vec<f64>> {
    let transposed = dense_partial_transpose(state, n_max)?;
    Ok(jacobi_eigenvalues(transposed, JACOBI_OFF_TOL, 100)?.eigenvalues)
}

/// The matrix behind [`dense_pt_oracle`], basis index φ·(n_max + 2) + ψ.
pub fn dense_partial_transpose(state: &ReducedState, n_max: usize) -> Result<SymmetricMatrix> {
    if n_max > DENSE_CAP {
        return Err(Error::Size { requested: n_max, cap: DENSE_CAP });
    }
    let g = state.gamma;
    let c = state.c;
    let psi_levels = n_max + 2;
    let dim = 2 * psi_levels;
    let index = |phi: usize, psi: usize| phi * psi_levels + psi;

    // Column l of the tripartite amplitude tensor: nonzero (φψ index, amplitude).
    let root_g = g.sqrt();
    let mut reduced = SymmetricMatrix::zeros(dim);
    for l in 0..=n_max {
        let squeeze = pow_usize(root_g, l);
        let column = [
            (index(0, l), (1.0 - g).sqrt() * squeeze),
            (index(1, l + 1), c * (1.0 - g) * squeeze * ((l + 1) as f64).sqrt()),
        ];
        for &(a, amp_a) in &column {
            for &(b, amp_b) in &column {
                reduced.add(a, b, amp_a * amp_b);
            }
        }
    }

    let mut transposed = SymmetricMatrix::zeros(dim);
    for i in 0..2 {
        for j in 0..psi_levels {
            for i2 in 0..2 {
                for j2 in 0..psi_levels {
                    transposed.set(index(i, j), index(i2, j2), reduced.get(index(i2, j), index(i, j2)));
                }
            }
        }
    }
    if state.mode == Mode::Exact {
        let tr = transposed.trace();
        transposed.scale(1.0 / tr);
    }
    Ok(transposed)
}

/// The spectrum of the same truncated operator as [`dense_pt_oracle`], assembled
/// from the sector formulas: |0,0⟩, sectors 0..n_max−1 from [`block_eigenvalues`],
/// the boundary sector n_max (whose |0,n_max+1⟩ population lies beyond the
/// truncation) and the isolated |1,n_max+1⟩ population. Exact mode only;
/// normalized to unit trace, ascending.
pub fn truncated_block_spectrum(state: &ReducedState, n_max: usize) -> Vec<f64> {
    let exact = ReducedState { mode: Mode::Exact, ..*state };
    let g = exact.gamma;
    let c = exact.c;
    let mut values = Vec::with_capacity(2 * n_max + 4);
    values.push(1.0 - g);
    for n in 0..n_max {
        let s = block_eigenvalues(n, &exact);
        values.push(s.nu_plus);
        values.push(s.nu_minus);
    }
    let edge = pt_block(n_max, &exact);
    let mean = 0.5 * edge.upper;
    let radius = mean.hypot(edge.coupling);
    values.push(mean + radius);
    values.push(if mean + radius > 0.0 { -edge.coupling * edge.coupling / (mean + radius) } else { 0.0 });
    values.push((1.0 - g) * pow_usize(g, n_max) * c * c * (1.0 - g) * (n_max + 1) as f64);

    let trace: f64 = (0..=n_max)
        .map(|n| (1.0 - g) * pow_usize(g, n) * (1.0 + c * c * (1.0 - g) * (n + 1) as f64))
        .sum();
    values.iter_mut().for_each(|v| *v /= trace);
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(gamma: f64, c: f64) -> ReducedState {
        ReducedState::new(gamma, c, Mode::Exact).unwrap()
    }

    #[test]
    fn rejects_bad_state() {
        assert!(ReducedState::new(1.0, 0.1, Mode::Exact).is_err());
        assert!(ReducedState::new(-0.1, 0.1, Mode::Exact).is_err());
        assert!(ReducedState::new(0.3, -0.1, Mode::Exact).is_err());
        assert!(negativity(&exact(0.3, 0.1), 0.0).is_err());
    }

    #[test]
    fn antidiagonal_ground_sector() {
        let s = exact(0.0, 0.5);
        let b = pt_block(0, &s);
        assert_eq!((b.upper, b.lower, b.coupling), (0.0, 0.0, 0.5));
        let e = block_eigenvalues(0, &s);
        assert!((e.nu_plus - 0.5).abs() < 1e-16 && (e.nu_minus + 0.5).abs() < 1e-16);
    }

    #[test]
    fn uncoupled_blocks_are_diagonal() {
        for n in 0..6 {
            let s = exact(0.4, 0.0);
            let b = pt_block(n, &s);
            assert_eq!(b.coupling, 0.0);
            assert_eq!(b.upper, 0.0);
            let w = 0.6 * 0.4f64.powi(n as i32);
            assert!((b.lower - w * 0.4).abs() < 1e-16);
            assert_eq!(block_eigenvalues(n, &s).nu_minus, 0.0);
        }
    }

    #[test]
    fn gamma_zero_keeps_second_sector_population() {
        let s = exact(0.0, 0.3);
        let b = pt_block(1, &s);
        assert!((b.upper - 0.09).abs() < 1e-16);
        assert_eq!(b.coupling, 0.0);
        assert_eq!(pt_block(2, &s).upper, 0.0);
    }

    #[test]
    fn block_trace_and_determinant() {
        let s = exact(0.37, 0.02);
        for n in 0..40 {
            let b = pt_block(n, &s);
            let e = block_eigenvalues(n, &s);
            assert!(e.nu_plus >= e.nu_minus);
            assert!(e.nu_minus < 0.0);
            assert!((e.nu_plus + e.nu_minus - b.trace()).abs() <= 1e-15 * b.trace().max(1e-300));
            let det = b.upper * b.lower - b.coupling * b.coupling;
            assert!((e.nu_plus * e.nu_minus - det).abs() <= 1e-12 * det.abs());
        }
    }

    #[test]
    fn separable_state_has_zero_negativity() {
        for g in [0.0, 0.2, 0.9] {
            let r = negativity(&exact(g, 0.0), DEFAULT_TOL).unwrap();
            assert_eq!(r.neg, 0.0);
            assert_eq!(r.log_neg, 0.0);
        }
    }

    #[test]
    fn single_sector_at_zero_gamma() {
        let c = 0.25;
        let r = negativity(&exact(0.0, c), DEFAULT_TOL).unwrap();
        let want = (1.0 + 2.0 * c / (1.0 + c * c)).log2();
        assert!((r.log_neg - want).abs() < 1e-15);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn dense_reference_values() {
        // numpy eigvalsh of the traced-out tripartite state, and 50-digit block sums
        let r = negativity(&exact(0.5, 1e-3), DEFAULT_TOL).unwrap();
        assert!((r.neg - 9.999_950_000_369_996e-7).abs() < 1e-15);
        assert!(r.tail_bound <= DEFAULT_TOL);

        let dense = dense_pt_oracle(&exact(0.5, 1e-3), 80).unwrap();
        let dense_neg: f64 = -dense.iter().filter(|v| **v < 0.0).sum::<f64>();
        assert!((dense_neg - r.neg).abs() < 1e-9);
    }

    #[test]
    fn dense_two_level_fixture() {
        // γ = 0, c = 1/2: PT entries 1, c², and ±c on the {|1,0⟩,|0,1⟩} pair,
        // divided by 1 + c² = 5/4.
        let ev = dense_pt_oracle(&exact(0.0, 0.5), 3).unwrap();
        let nonzero: Vec<f64> = ev.iter().copied().filter(|v| v.abs() > 1e-15).collect();
        let want = [-0.4, 0.2, 0.4, 0.8];
        assert_eq!(nonzero.len(), 4);
        for (a, b) in nonzero.iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{nonzero:?}");
        }
    }

    #[test]
    fn dense_uncoupled_is_geometric() {
        let g = 0.3;
        let ev = dense_pt_oracle(&exact(g, 0.0), 10).unwrap();
        assert!(ev.iter().all(|v| *v >= 0.0));
        let mut want: Vec<f64> = (0..=10).map(|n| 0.7 * g.powi(n)).collect();
        let total: f64 = want.iter().sum();
        want.iter_mut().for_each(|v| *v /= total);
        let mut nonzero: Vec<f64> = ev.into_iter().filter(|v| *v > 0.0).collect();
        nonzero.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in nonzero.iter().zip(&want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn dense_cap() {
        assert_eq!(
            dense_pt_oracle(&exact(0.1, 0.1), DENSE_CAP + 1).unwrap_err(),
            Error::Size { requested: DENSE_CAP + 1, cap: DENSE_CAP }
        );
    }

    #[test]
    fn block_entries_match_dense_matrix() {
        // sector n = 3 of the (unnormalized) dense partial transpose
        let s = ReducedState::new(0.4, 0.01, Mode::PaperLiteral).unwrap();
        let (g, c) = (s.gamma, s.c);
        let n = 3usize;
        let b = pt_block(n, &s);
        let w = (1.0 - g) * g.powi(n as i32);
        assert!((b.upper - (1.0 - g) * g.powi(2) * c * c * (1.0 - g) * 3.0).abs() < 1e-14);
        assert!((b.coupling - w * c * (1.0 - g).sqrt() * 2.0).abs() < 1e-14);
        assert!((b.lower - (1.0 - g) * g.powi(4)).abs() < 1e-14);

        let n_max = 10;
        let dense = dense_partial_transpose(&s, n_max).unwrap();
        let levels = n_max + 2;
        let (one_n, zero_n1) = (levels + n, n + 1);
        assert!((dense.get(one_n, one_n) - b.upper).abs() < 1e-14);
        assert!((dense.get(one_n, zero_n1) - b.coupling).abs() < 1e-14);
        assert!((dense.get(zero_n1, one_n) - b.coupling).abs() < 1e-14);
        assert!((dense.get(zero_n1, zero_n1) - b.lower).abs() < 1e-14);
    }

    #[test]
    fn paper_literal_separable_limit_disagrees() {
        let s = ReducedState::new(0.3, 0.0, Mode::PaperLiteral).unwrap();
        let r = negativity(&s, DEFAULT_TOL).unwrap();
        assert_eq!(r.log_neg, 0.0);
        let closed = r.paper_closed_form.unwrap();
        assert!((closed - 1.3f64.log2()).abs() < 1e-15);
    }

    #[test]
    fn sector_cap_is_reported() {
        let err = negativity_with_cap(&exact(0.999, 0.01), 1e-12, 100).unwrap_err();
        assert!(matches!(err, Error::Tolerance { .. }));
    }
}
