//! The exact constant in `‖x‖₁ ≤ √n‖x‖₂`.
//!
//! For nonzero `x ∈ 𝔽ⁿ` the defect
//!
//! ```text
//! c_x = 2 (1 − ‖x‖₁ / (√n ‖x‖₂))
//!     = Σᵢ (|aᵢ|/‖x‖₂ − 1/√n)²
//! ```
//!
//! gives `‖x‖₁ = (1 − c_x/2) √n ‖x‖₂` exactly, and `√c_x` is the distance
//! from `x/‖x‖₂` to the nearest constant-modulus vector, the one with phases
//! `cᵢ = aᵢ/|aᵢ|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar, Vector};

const UNIMODULAR_TOL: f64 = 1e-12;

/// Absolute slack granted to the `√s` test so that the equality case stays true.
pub const SQRT_S_BOUND_TOL: f64 = 1e-9;

/// A vector `(1/√n)(c₁, …, cₙ)` with every `|cᵢ| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantModulusVector {
    field: Field,
    phases: Vec<Scalar>,
}

impl ConstantModulusVector {
    pub fn new(field: Field, phases: Vec<Scalar>) -> Result<Self> {
        // Reuse the vector checks for emptiness, finiteness and real-ness.
        let phases = Vector::new(field, phases)?.into_entries();
        for (index, c) in phases.iter().enumerate() {
            let modulus = c.norm();
            if (modulus - 1.0).abs() > UNIMODULAR_TOL {
                return Err(Error::NotUnimodular { index, modulus });
            }
        }
        Ok(Self { field, phases })
    }

    /// Real constant-modulus vector from a sign pattern. Nonnegative entries map to `+1`.
    pub fn from_signs(signs: &[f64]) -> Result<Self> {
        let phases = signs
            .iter()
            .map(|&s| Complex64::new(if s < 0.0 { -1.0 } else { 1.0 }, 0.0))
            .collect();
        Self::new(Field::Real, phases)
    }

    pub(crate) fn from_raw(field: Field, phases: Vec<Scalar>) -> Self {
        Self { field, phases }
    }

    /// The all-ones phase vector.
    pub fn ones(field: Field, n: usize) -> Result<Self> {
        Self::new(field, vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[Scalar] {
        &self.phases
    }

    /// The represented unit vector `(1/√n)(c₁, …, cₙ)`.
    pub fn to_vector(&self) -> Vector {
        let scale = 1.0 / (self.phases.len() as f64).sqrt();
        Vector::from_raw(self.field, self.phases.iter().map(|c| c * scale).collect())
    }

    /// The unnormalized phase vector `(c₁, …, cₙ)`.
    pub fn to_phase_vector(&self) -> Vector {
        Vector::from_raw(self.field, self.phases.clone())
    }
}

/// Everything [`analyze`] knows about a single vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessReport {
    pub n: usize,
    pub l1: f64,
    pub l2: f64,
    pub c_x: f64,
    pub nearest: ConstantModulusVector,
    pub distance: f64,
}

impl TightnessReport {
    /// `1 − c_x/2`, the fraction of `√n‖x‖₂` that `‖x‖₁` actually reaches.
    pub fn ratio(&self) -> f64 {
        1.0 - self.c_x / 2.0
    }
}

fn nonzero_norm2(x: &Vector) -> Result<f64> {
    let l2 = x.norm2();
    if l2 == 0.0 {
        Err(Error::ZeroVector)
    } else {
        Ok(l2)
    }
}

/// `c_x = 2(1 − ‖x‖₁/(√n‖x‖₂))`, clamped to `[0, 2]`.
pub fn tightness_constant(x: &Vector) -> Result<f64> {
    let l2 = nonzero_norm2(x)?;
    let n = x.len() as f64;
    let c = 2.0 * (1.0 - x.norm1() / (n.sqrt() * l2));
    Ok(c.clamp(0.0, 2.0))
}

/// `c_x` evaluated as the squared deviation `Σᵢ(|aᵢ|/‖x‖₂ − 1/√n)²` of the
/// normalized moduli from the flat profile.
pub fn tightness_constant_by_deviation(x: &Vector) -> Result<f64> {
    let l2 = nonzero_norm2(x)?;
    let flat = 1.0 / (x.len() as f64).sqrt();
    let c = x
        .entries()
        .iter()
        .map(|a| {
            let d = a.norm() / l2 - flat;
            d * d
        })
        .sum::<f64>();
    Ok(c.clamp(0.0, 2.0))
}

/// Nearest constant-modulus vector to `x/‖x‖₂`, with the distance to it.
///
/// Phases are `aᵢ/|aᵢ|`; zero entries take phase `1` (any unit phase is
/// equally close there).
pub fn nearest_constant_modulus(x: &Vector) -> Result<(ConstantModulusVector, f64)> {
    let l2 = nonzero_norm2(x)?;
    let phases: Vec<Scalar> = x
        .entries()
        .iter()
        .map(|&a| match x.field() {
            Field::Real => Complex64::new(if a.re < 0.0 { -1.0 } else { 1.0 }, 0.0),
            Field::Complex => {
                let m = a.norm();
                if m == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    let c = a / m;
                    c / c.norm()
                }
            }
        })
        .collect();
    let nearest = ConstantModulusVector::from_raw(x.field(), phases);
    let distance = x.scale(1.0 / l2).distance(&nearest.to_vector())?;
    Ok((nearest, distance))
}

/// Whether `‖x‖₁ ≤ √s‖x‖₂`, decided through `1 − c_x/2 ≤ √(s/n)`.
///
/// The comparison has absolute slack [`SQRT_S_BOUND_TOL`] in favour of `true`.
pub fn satisfies_sqrt_s_bound(x: &Vector, s: f64) -> Result<bool> {
    let n = x.len();
    if !(s > 0.0 && s <= n as f64) {
        return Err(Error::SparsityOutOfRange { s, n });
    }
    let c = tightness_constant(x)?;
    Ok(1.0 - c / 2.0 <= (s / n as f64).sqrt() + SQRT_S_BOUND_TOL)
}

pub fn analyze(x: &Vector) -> Result<TightnessReport> {
    let c_x = tightness_constant(x)?;
    let (nearest, distance) = nearest_constant_modulus(x)?;
    Ok(TightnessReport {
        n: x.len(),
        l1: x.norm1(),
        l2: x.norm2(),
        c_x,
        nearest,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vector {
        Vector::real(v.to_vec()).unwrap()
    }

    // Brute force over all real sign patterns.
    fn brute_force_distance(x: &Vector) -> f64 {
        let n = x.len();
        let u = x.normalized().unwrap().real_parts();
        let scale = 1.0 / (n as f64).sqrt();
        (0u32..1 << n)
            .map(|mask| {
                (0..n)
                    .map(|i| {
                        let s = if mask >> i & 1 == 1 { -scale } else { scale };
                        (u[i] - s).powi(2)
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn constant_examples() {
        assert!(tightness_constant(&real(&[0.5; 4])).unwrap().abs() < 1e-15);
        assert!((tightness_constant(&real(&[1.0, 0.0, 0.0, 0.0])).unwrap() - 1.0).abs() < 1e-15);
        let c = tightness_constant(&real(&[3.0, 4.0])).unwrap();
        assert!((c - 0.020101012677667063).abs() < 1e-12);
    }

    #[test]
    fn both_formulas_agree_on_examples() {
        for v in [
            vec![3.0, 4.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![1.0, -2.0, 0.0],
            vec![0.5; 4],
        ] {
            let x = real(&v);
            let a = tightness_constant(&x).unwrap();
            let b = tightness_constant_by_deviation(&x).unwrap();
            assert!((a - b).abs() < 1e-12, "{v:?}: {a} vs {b}");
        }
    }

    #[test]
    fn nearest_examples() {
        let (cm, d) = nearest_constant_modulus(&real(&[0.6, 0.8])).unwrap();
        assert_eq!(cm.phases(), &[Complex64::new(1.0, 0.0); 2]);
        assert!((d - 0.14177804018135906).abs() < 1e-12);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (cm, d) = nearest_constant_modulus(&real(&[h, -h])).unwrap();
        for (a, b) in cm.to_vector().real_parts().iter().zip([h, -h]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(d < 1e-15);

        let r5 = 5f64.sqrt();
        let x = real(&[1.0 / r5, -2.0 / r5, 0.0]);
        let (cm, d) = nearest_constant_modulus(&x).unwrap();
        let signs: Vec<f64> = cm.phases().iter().map(|z| z.re).collect();
        assert_eq!(signs, vec![1.0, -1.0, 1.0]);
        assert!((d - 0.6714213740394577).abs() < 1e-12);
        assert!((d - brute_force_distance(&x)).abs() < 1e-12);
    }

    #[test]
    fn complex_phases_are_unimodular() {
        let x = Vector::complex(vec![
            Complex64::new(3.0, 4.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1e-3, 2e-3),
        ])
        .unwrap();
        let (cm, d) = nearest_constant_modulus(&x).unwrap();
        for p in cm.phases() {
            assert!((p.norm() - 1.0).abs() <= 1e-15);
        }
        assert_eq!(cm.phases()[1], Complex64::new(1.0, 0.0));
        let c = tightness_constant(&x).unwrap();
        assert!((d * d - c).abs() < 1e-12);
    }

    #[test]
    fn sqrt_s_examples() {
        assert!(satisfies_sqrt_s_bound(&real(&[1.0, 0.0, 0.0, 0.0]), 1.0).unwrap());
        assert!(!satisfies_sqrt_s_bound(&real(&[0.5; 4]), 3.0).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(satisfies_sqrt_s_bound(&real(&[h, h, 0.0, 0.0]), 2.0).unwrap());
    }

    #[test]
    fn sqrt_s_rejects_out_of_range_levels() {
        let x = real(&[1.0, 2.0]);
        assert!(matches!(
            satisfies_sqrt_s_bound(&x, 3.0),
            Err(Error::SparsityOutOfRange { .. })
        ));
        assert!(matches!(
            satisfies_sqrt_s_bound(&x, 0.0),
            Err(Error::SparsityOutOfRange { .. })
        ));
        assert!(matches!(
            satisfies_sqrt_s_bound(&x, f64::NAN),
            Err(Error::SparsityOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_vector_is_rejected_everywhere() {
        let z = real(&[0.0, 0.0]);
        assert_eq!(tightness_constant(&z), Err(Error::ZeroVector));
        assert_eq!(tightness_constant_by_deviation(&z), Err(Error::ZeroVector));
        assert!(matches!(
            nearest_constant_modulus(&z),
            Err(Error::ZeroVector)
        ));
        assert_eq!(satisfies_sqrt_s_bound(&z, 1.0), Err(Error::ZeroVector));
        assert!(matches!(analyze(&z), Err(Error::ZeroVector)));
        assert_eq!(
            Error::ZeroVector.to_string(),
            "tightness constant undefined for zero vector"
        );
    }

    #[test]
    fn analyze_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = analyze(&real(&[h, h])).unwrap();
        assert!(r.c_x.abs() < 1e-15 && r.distance < 1e-15);
        assert!((r.l1 - 2f64.sqrt()).abs() < 1e-15);

        let r = analyze(&real(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!((r.c_x, r.l1), (1.0, 1.0));
        assert!((r.distance - 1.0).abs() < 1e-15);

        let r = analyze(&real(&[3.0, 4.0])).unwrap();
        assert_eq!((r.l1, r.l2), (7.0, 5.0));
        assert!((r.c_x - 0.020101012677667063).abs() < 1e-12);
        assert!((r.l1 - r.ratio() * 2f64.sqrt() * r.l2).abs() < 1e-12);
    }

    #[test]
    fn constant_modulus_vector_validation() {
        assert!(matches!(
            ConstantModulusVector::new(Field::Real, vec![Complex64::new(0.5, 0.0)]),
            Err(Error::NotUnimodular { index: 0, .. })
        ));
        let cm = ConstantModulusVector::from_signs(&[1.0, -1.0, 0.0, 2.0]).unwrap();
        assert!((cm.to_vector().norm2() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn c_x_stays_within_its_range() {
        for n in 1..=16 {
            let e1 = Vector::basis(Field::Real, n, 0).unwrap();
            let upper = 2.0 - 2.0 / (n as f64).sqrt();
            let c = tightness_constant(&e1).unwrap();
            assert!((c - upper).abs() < 1e-14);
        }
    }
}
