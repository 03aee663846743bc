//! Random inputs: Gaussian vectors, random subspaces, unit vectors inside a
//! subspace and nonnegative step functions.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::field::{Field, Scalar, Vector};
use crate::function_space::StepFunction;
use crate::subspace::Subspace;

fn gaussian_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    let re: f64 = rng.sample(StandardNormal);
    match field {
        Field::Real => Complex64::new(re, 0.0),
        Field::Complex => Complex64::new(re, rng.sample(StandardNormal)),
    }
}

/// Vector with i.i.d. standard Gaussian entries (nonzero with probability one).
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize) -> Vector {
    Vector::from_raw(field, (0..n).map(|_| gaussian_scalar(rng, field)).collect())
}

/// Span of `dim` Gaussian vectors in `𝔽ⁿ`; rotation invariant, dimension `dim` almost surely.
pub fn random_subspace<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    n: usize,
    dim: usize,
) -> Subspace {
    assert!(dim >= 1 && dim <= n, "need 1 <= dim <= n");
    loop {
        let vs: Vec<Vector> = (0..dim).map(|_| random_vector(rng, field, n)).collect();
        if let Ok(s) = Subspace::from_spanning_set(&vs) {
            if s.dim() == dim {
                return s;
            }
        }
    }
}

/// Span of `dim` distinct standard basis vectors chosen uniformly. Returns the
/// subspace and its sorted 0-based index set.
pub fn random_coordinate_subspace<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    n: usize,
    dim: usize,
) -> (Subspace, Vec<usize>) {
    let mut indices = sample(rng, n, dim).into_vec();
    indices.sort_unstable();
    let s = Subspace::coordinate(field, n, &indices).expect("indices are in range");
    (s, indices)
}

/// Uniformly distributed unit vector of `S`.
pub fn random_unit_in<R: Rng + ?Sized>(rng: &mut R, s: &Subspace) -> Vector {
    loop {
        let mut acc = vec![Complex64::new(0.0, 0.0); s.ambient_dim()];
        for u in s.basis() {
            let g = gaussian_scalar(rng, s.field());
            for (a, z) in acc.iter_mut().zip(u.entries()) {
                *a += g * z;
            }
        }
        if let Ok(y) = Vector::from_raw(s.field(), acc).normalized() {
            return y;
        }
    }
}

/// Unit-norm nonnegative step function with `1..=max_cells` cells, random
/// breakpoints, and some zero cells mixed in.
pub fn random_step_function<R: Rng + ?Sized>(rng: &mut R, max_cells: usize) -> StepFunction {
    let m = rng.random_range(1..=max_cells.max(1));
    loop {
        let mut inner: Vec<f64> = (1..m).map(|_| rng.random::<f64>()).collect();
        inner.sort_by(f64::total_cmp);
        let mut breakpoints = Vec::with_capacity(m + 1);
        breakpoints.push(0.0);
        breakpoints.extend(inner);
        breakpoints.push(1.0);
        let values: Vec<f64> = (0..m)
            .map(|_| {
                if rng.random::<f64>() < 0.2 {
                    0.0
                } else {
                    rng.random_range(0.0..5.0)
                }
            })
            .collect();
        if let Ok(f) = StepFunction::new(breakpoints, values).and_then(|f| f.normalized()) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace_bound::restart_rng;

    #[test]
    fn samples_have_the_requested_shape() {
        let mut rng = restart_rng(5, 0);
        let s = random_subspace(&mut rng, Field::Complex, 6, 3);
        assert_eq!((s.ambient_dim(), s.dim()), (6, 3));
        let y = random_unit_in(&mut rng, &s);
        assert!((y.norm2() - 1.0).abs() < 1e-14);
        assert!(s.contains(&y, 1e-12).unwrap());

        let (c, idx) = random_coordinate_subspace(&mut rng, Field::Real, 7, 4);
        assert_eq!(c.dim(), 4);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));

        for _ in 0..50 {
            let f = random_step_function(&mut rng, 16);
            assert!((f.l2_norm() - 1.0).abs() < 1e-12);
            assert!(f.values().len() <= 16);
        }
    }
}
