//! Coordinate-subspace detection.
//!
//! An `s`-dimensional subspace satisfies `‖y‖₁ ≤ √s‖y‖₂` for all its vectors
//! exactly when it is spanned by `s` standard basis vectors. The structural
//! test looks at the Gram matrix of `{Peᵢ}`: it is diagonal with entries in
//! `{0, 1}` precisely for coordinate subspaces. When it is not, the greedy
//! phase construction produces a constant-modulus `c` with
//! `‖Pc‖² > Σ‖Peᵢ‖² = s`, and `P c/‖Pc‖` violates the bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar, Vector};
use crate::sample::random_unit_in;
use crate::subspace::Subspace;
use crate::subspace_bound::restart_rng;
use crate::tightness::ConstantModulusVector;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SAMPLES: usize = 200;
/// Slack above `√s‖y‖₂` before a sample counts as a violation.
pub const VIOLATION_MARGIN: f64 = 1e-9;

pub const COMPLEX_SCOPE_NOTE: &str = "per proof technique, theorem stated for real scalars";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Spanned by `e_i`, `i ∈ index_set` (0-based, ascending).
    Coordinate {
        index_set: Vec<usize>,
    },
    NotCoordinate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateDecision {
    pub verdict: Verdict,
    /// Unit vector of the subspace along the greedy direction; present iff not coordinate.
    pub witness: Option<Vector>,
    /// `‖witness‖₁ − √s`, present with the witness.
    pub witness_margin: Option<f64>,
    /// Largest off-diagonal modulus of the Gram matrix of `{Peᵢ}`.
    pub gram_offdiag: f64,
    /// Set for complex subspaces, where the structure result is only backed by the proof technique.
    pub note: Option<&'static str>,
}

impl CoordinateDecision {
    pub fn is_coordinate(&self) -> bool {
        matches!(self.verdict, Verdict::Coordinate { .. })
    }
}

/// `G[i][j] = ⟨Peᵢ, Peⱼ⟩`, row-major `n × n`.
pub fn gram_of_projected_basis(s: &Subspace) -> Vec<Scalar> {
    let n = s.ambient_dim();
    let cols: Vec<Vector> = (0..n).map(|i| s.projected_basis_vector(i)).collect();
    let mut g = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let v = cols[i].inner(&cols[j]).expect("columns share shape");
            g[i * n + j] = v;
            g[j * n + i] = v.conj();
        }
    }
    g
}

fn max_offdiag(g: &[Scalar], n: usize) -> (f64, Option<(usize, usize)>) {
    let mut best = (0.0, None);
    for i in 0..n {
        for j in i + 1..n {
            let m = g[i * n + j].norm();
            if m > best.0 {
                best = (m, Some((i, j)));
            }
        }
    }
    best
}

/// Structural test: coordinate iff every off-diagonal `|Gᵢⱼ| ≤ tol` and every
/// `‖Peᵢ‖` lies within `tol` of 0 or 1. Then `I = {i : ‖Peᵢ‖ > 1/2}`.
pub fn is_coordinate_subspace(s: &Subspace, tol: f64) -> Result<CoordinateDecision> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    let n = s.ambient_dim();
    let g = gram_of_projected_basis(s);
    let (gram_offdiag, _) = max_offdiag(&g, n);
    let norms: Vec<f64> = (0..n).map(|i| g[i * n + i].re.max(0.0).sqrt()).collect();
    let rounded = norms.iter().all(|&r| r <= tol || (r - 1.0).abs() <= tol);
    let index_set: Vec<usize> = (0..n).filter(|&i| norms[i] > 0.5).collect();
    let note = (s.field() == Field::Complex).then_some(COMPLEX_SCOPE_NOTE);

    if gram_offdiag <= tol && rounded && index_set.len() == s.dim() {
        return Ok(CoordinateDecision {
            verdict: Verdict::Coordinate { index_set },
            witness: None,
            witness_margin: None,
            gram_offdiag,
            note,
        });
    }
    let greedy = greedy_phase_witness(s)?;
    let y = greedy.direction(s)?;
    let margin = y.norm1() - (s.dim() as f64).sqrt();
    Ok(CoordinateDecision {
        verdict: Verdict::NotCoordinate,
        witness: Some(y),
        witness_margin: Some(margin),
        gram_offdiag,
        note,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyWitness {
    pub phases: ConstantModulusVector,
    /// `‖P((1/√n)Σ cᵢeᵢ)‖₂`.
    pub value: f64,
    /// Order in which coordinates received their phase.
    pub order: Vec<usize>,
}

impl GreedyWitness {
    /// `P c/‖Pc‖`, the candidate violator of `‖y‖₁ ≤ √s‖y‖₂`.
    pub fn direction(&self, s: &Subspace) -> Result<Vector> {
        s.project(&self.phases.to_vector())?.normalized()
    }
}

/// Sequential phase choice: the first coordinate gets phase 1, and each next
/// `cₖ` aligns `Peₖ` with the running sum `Σⱼ cⱼPeⱼ`, so every step adds at
/// least `‖Peₖ‖²` to `‖Σ cⱼPeⱼ‖²`. Real ties take `+1`.
///
/// The least orthogonal pair of `{Peᵢ}` is placed first, which makes the very
/// first step a strict gain whenever the Gram matrix has an off-diagonal
/// entry. The remaining coordinates follow in index order.
pub fn greedy_phase_witness(s: &Subspace) -> Result<GreedyWitness> {
    let n = s.ambient_dim();
    let field = s.field();
    let g = gram_of_projected_basis(s);
    let order: Vec<usize> = match max_offdiag(&g, n) {
        (_, Some((i, j))) => {
            let mut order = vec![i, j];
            order.extend((0..n).filter(|&k| k != i && k != j));
            order
        }
        (_, None) => (0..n).collect(),
    };

    let one = Complex64::new(1.0, 0.0);
    let mut phases = vec![one; n];
    let mut acc = s.projected_basis_vector(order[0]);
    for &k in &order[1..] {
        let pk = s.projected_basis_vector(k);
        // ‖acc + c pk‖² = ‖acc‖² + ‖pk‖² + 2 Re(c̄ ⟨acc, pk⟩).
        let ip = acc.inner(&pk)?;
        let c = match field {
            Field::Real if ip.re < 0.0 => Complex64::new(-1.0, 0.0),
            Field::Real => one,
            Field::Complex => {
                let m = ip.norm();
                if m == 0.0 {
                    one
                } else {
                    let c = ip / m;
                    c / c.norm()
                }
            }
        };
        phases[k] = c;
        acc = acc.add(&Vector::from_raw(
            field,
            pk.entries().iter().map(|z| z * c).collect(),
        ))?;
    }
    let value = acc.norm2() / (n as f64).sqrt();
    Ok(GreedyWitness {
        phases: ConstantModulusVector::from_raw(field, phases),
        value,
        order,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundProbe {
    HoldsOnSamples {
        checked: usize,
    },
    ViolationFound {
        witness: Vector,
        l1: f64,
        margin: f64,
    },
}

/// Looks for a unit `y` in `S` with `‖y‖₁ > √s + VIOLATION_MARGIN`, `s = dim S`.
///
/// The greedy direction is tried first, then `samples` random unit vectors of
/// `S` drawn from `seed`. Only a violation is conclusive.
pub fn probe_sqrt_dim_bound(s: &Subspace, samples: usize, seed: u64) -> Result<BoundProbe> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let limit = (s.dim() as f64).sqrt() + VIOLATION_MARGIN;
    let check = |y: Vector| -> Option<BoundProbe> {
        let l1 = y.norm1();
        (l1 > limit).then(|| BoundProbe::ViolationFound {
            witness: y,
            l1,
            margin: l1 - (s.dim() as f64).sqrt(),
        })
    };

    let greedy = greedy_phase_witness(s)?;
    if let Ok(y) = greedy.direction(s) {
        if let Some(found) = check(y) {
            return Ok(found);
        }
    }
    let mut rng = restart_rng(seed, 0);
    for _ in 0..samples {
        if let Some(found) = check(random_unit_in(&mut rng, s)) {
            return Ok(found);
        }
    }
    Ok(BoundProbe::HoldsOnSamples {
        checked: samples + 1,
    })
}
