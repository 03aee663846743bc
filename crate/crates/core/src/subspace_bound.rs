//! The sharp constant `c` for which every unit `y` in a subspace `S` satisfies
//! `‖y‖₁ ≤ (1 − c/2)√n`.
//!
//! Equivalently `1 − c/2 = max ‖Pw‖₂` over constant-modulus `w`, so
//! `c = 2 − 2·max‖Pw‖₂`. Over the reals the maximum is over the `2ⁿ` sign
//! vectors and can be enumerated ([`subspace_constant_exact`]). Over the
//! complex numbers the phases range over a torus and only the alternating
//! ascent ([`subspace_constant_heuristic`]) is available.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar, Vector};
use crate::par::Execution;
use crate::subspace::Subspace;
use crate::tightness::ConstantModulusVector;

/// Largest ambient dimension accepted by the exhaustive search.
pub const EXACT_SEARCH_CUTOFF: usize = 22;
pub const DEFAULT_RESTARTS: usize = 32;
pub const DEFAULT_SEED: u64 = 0;

/// The ascent stops once `‖Pc‖` improves by less than this.
pub const ASCENT_TOL: f64 = 1e-12;
const MAX_ASCENT_ITERS: usize = 10_000;

// Sign patterns are enumerated in chunks of 2^CHUNK_BITS keys. Each chunk
// starts from a freshly computed value and walks its keys in Gray-code order.
const CHUNK_BITS: u32 = 12;
// Patterns within this relative distance of the maximum count as tied.
const TIE_REL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    ExactBruteForce,
    AlternatingHeuristic,
}

impl SearchMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMethod::ExactBruteForce => "exact_brute_force",
            SearchMethod::AlternatingHeuristic => "alternating_heuristic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBoundReport {
    /// `2 − 2·max_proj_norm`, clamped to `[0, 2]`.
    pub c: f64,
    pub max_proj_norm: f64,
    pub witness: ConstantModulusVector,
    pub method: SearchMethod,
    /// True only when the maximum was found by exhaustive search.
    pub certified: bool,
}

impl SubspaceBoundReport {
    fn new(max_proj_norm: f64, witness: ConstantModulusVector, method: SearchMethod) -> Self {
        Self {
            c: (2.0 - 2.0 * max_proj_norm).clamp(0.0, 2.0),
            max_proj_norm,
            witness,
            method,
            certified: method == SearchMethod::ExactBruteForce,
        }
    }

    /// `(1 − c/2)√n`: the largest `‖y‖₁` over unit `y` in the subspace (a lower
    /// estimate of it when not certified).
    pub fn l1_bound(&self) -> f64 {
        (1.0 - self.c / 2.0) * (self.witness.len() as f64).sqrt()
    }
}

/// `‖P w‖₂` for a constant-modulus `w`.
pub fn projected_norm(s: &Subspace, w: &ConstantModulusVector) -> Result<f64> {
    Ok(s.project(&w.to_vector())?.norm2())
}

/// Exhaustive search over all real sign vectors, using the parallel strategy when available.
pub fn subspace_constant_exact(s: &Subspace) -> Result<SubspaceBoundReport> {
    subspace_constant_exact_with(s, Execution::Parallel)
}

/// Exhaustive search over the `2ⁿ⁻¹` sign vectors with `c₁ = +1` (`−c` gives
/// the same `‖Pc‖`).
///
/// Among (numerically) tied maximizers the lexicographically smallest sign
/// pattern wins, ordering `+1` before `−1`. The result is identical for every
/// [`Execution`] strategy.
pub fn subspace_constant_exact_with(s: &Subspace, exec: Execution) -> Result<SubspaceBoundReport> {
    if s.field() != Field::Real {
        return Err(Error::ExactSearchComplex);
    }
    let n = s.ambient_dim();
    if n > EXACT_SEARCH_CUTOFF {
        return Err(Error::ExactSearchTooLarge {
            n,
            cutoff: EXACT_SEARCH_CUTOFF,
        });
    }
    let walker = SignWalker::new(s);
    let total: u64 = 1 << (n - 1);
    let chunk_len = total.min(1 << CHUNK_BITS);
    let chunks = (total / chunk_len) as usize;

    let bests = exec.map_indexed(chunks, |ci| {
        let mut best = (f64::NEG_INFINITY, u64::MAX);
        walker.walk(ci as u64 * chunk_len, chunk_len, |key, value| {
            if value > best.0 || (value == best.0 && key < best.1) {
                best = (value, key);
            }
        });
        best
    });

    let max = bests.iter().map(|b| b.0).fold(f64::NEG_INFINITY, f64::max);
    let threshold = max - TIE_REL_TOL * max.abs();
    let first = bests
        .iter()
        .position(|b| b.0 >= threshold)
        .expect("some chunk attains the max");
    let mut key = u64::MAX;
    walker.walk(first as u64 * chunk_len, chunk_len, |k, value| {
        if value >= threshold && k < key {
            key = k;
        }
    });

    let witness = ConstantModulusVector::from_signs(&walker.signs(key))?;
    let max_proj_norm = projected_norm(s, &witness)?;
    Ok(SubspaceBoundReport::new(
        max_proj_norm,
        witness,
        SearchMethod::ExactBruteForce,
    ))
}

/// Gray-code walk over sign patterns computing `‖Bᵀc‖² = ‖Pc‖²` for `c ∈ {±1}ⁿ`.
///
/// Key bit `n−1−j` set means coordinate `j` is negative, so numeric key order
/// is lexicographic order on the pattern.
struct SignWalker {
    n: usize,
    dim: usize,
    // Row-major n × dim real basis matrix.
    rows: Vec<f64>,
}

impl SignWalker {
    fn new(s: &Subspace) -> Self {
        let (n, dim) = (s.ambient_dim(), s.dim());
        let mut rows = vec![0.0; n * dim];
        for (k, u) in s.basis().iter().enumerate() {
            for (i, z) in u.entries().iter().enumerate() {
                rows[i * dim + k] = z.re;
            }
        }
        Self { n, dim, rows }
    }

    fn sign(&self, key: u64, j: usize) -> f64 {
        if key >> (self.n - 1 - j) & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    fn signs(&self, key: u64) -> Vec<f64> {
        (0..self.n).map(|j| self.sign(key, j)).collect()
    }

    fn walk(&self, base: u64, len: u64, mut visit: impl FnMut(u64, f64)) {
        let dim = self.dim;
        let mut signs = self.signs(base);
        let mut v = vec![0.0; dim];
        for (j, s) in signs.iter().enumerate() {
            let row = &self.rows[j * dim..(j + 1) * dim];
            for (acc, r) in v.iter_mut().zip(row) {
                *acc += s * r;
            }
        }
        visit(base, v.iter().map(|x| x * x).sum());
        for t in 1..len {
            let bit = t.trailing_zeros() as usize;
            let j = self.n - 1 - bit;
            signs[j] = -signs[j];
            let step = 2.0 * signs[j];
            let row = &self.rows[j * dim..(j + 1) * dim];
            for (acc, r) in v.iter_mut().zip(row) {
                *acc += step * r;
            }
            visit(base | (t ^ (t >> 1)), v.iter().map(|x| x * x).sum());
        }
    }
}

/// One run of a phase ascent.
#[derive(Debug, Clone, PartialEq)]
pub struct Ascent {
    pub phases: ConstantModulusVector,
    pub value: f64,
    /// `‖Pc‖` after each accepted iterate, starting with the initial phases.
    pub trace: Vec<f64>,
}

fn check_initial(s: &Subspace, initial: &ConstantModulusVector) -> Result<()> {
    if initial.field() != s.field() {
        return Err(Error::FieldMismatch);
    }
    if initial.len() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim(),
            found: initial.len(),
        });
    }
    Ok(())
}

/// Alternating ascent from `initial`: `y ← Pc`, then `cᵢ ← yᵢ/|yᵢ|`, keeping
/// the previous phase where `yᵢ = 0`. Stops once the gain drops below
/// [`ASCENT_TOL`]. The trace is non-decreasing.
pub fn alternating_ascent(s: &Subspace, initial: &ConstantModulusVector) -> Result<Ascent> {
    check_initial(s, initial)?;
    let y = s.project(&initial.to_vector())?;
    let mut ascent = Ascent {
        phases: initial.clone(),
        value: y.norm2(),
        trace: vec![y.norm2()],
    };
    alternate(s, &mut ascent, y)?;
    Ok(ascent)
}

fn alternate(s: &Subspace, ascent: &mut Ascent, mut y: Vector) -> Result<Vector> {
    let field = s.field();
    for _ in 0..MAX_ASCENT_ITERS {
        let next: Vec<Scalar> = y
            .entries()
            .iter()
            .zip(ascent.phases.phases())
            .map(|(&yi, &prev)| align_phase(field, yi, prev))
            .collect();
        let candidate = ConstantModulusVector::from_raw(field, next);
        let cy = s.project(&candidate.to_vector())?;
        let cvalue = cy.norm2();
        if cvalue < ascent.value {
            break;
        }
        let gain = cvalue - ascent.value;
        ascent.phases = candidate;
        ascent.value = cvalue;
        ascent.trace.push(cvalue);
        y = cy;
        if gain < ASCENT_TOL {
            break;
        }
    }
    Ok(y)
}

/// [`alternating_ascent`] followed by local moves that each maximize `‖Pc‖`
/// over one or two phases:
///
/// * coordinate sweeps `cⱼ ← phase((Pc)ⱼ − Pⱼⱼcⱼ)`. Dropping the diagonal
///   term lets the sweep leave fixed points of the alternating step, which
///   are plentiful when `P` is close to the identity;
/// * for real subspaces, the best improving pair of sign flips once no single
///   flip improves.
///
/// The final phases are fixed points of the alternating step and of every
/// single-phase move. The trace is non-decreasing.
pub fn polished_ascent(s: &Subspace, initial: &ConstantModulusVector) -> Result<Ascent> {
    check_initial(s, initial)?;
    let field = s.field();
    let n = s.ambient_dim();
    let p = s.projector();
    let scale = 1.0 / (n as f64).sqrt();
    let y = s.project(&initial.to_vector())?;
    let mut ascent = Ascent {
        phases: initial.clone(),
        value: y.norm2(),
        trace: vec![y.norm2()],
    };
    let y = alternate(s, &mut ascent, y)?;

    let mut phases = ascent.phases.phases().to_vec();
    let mut y = y.into_entries();
    let update = |y: &mut [Scalar], j: usize, delta: Scalar| {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += p.get(i, j) * delta;
        }
    };
    for _ in 0..MAX_ASCENT_ITERS {
        for j in 0..n {
            let rest = y[j] - p.get(j, j) * phases[j] * scale;
            let next = align_phase(field, rest, phases[j]);
            if next != phases[j] {
                update(&mut y, j, (next - phases[j]) * scale);
                phases[j] = next;
            }
        }
        if field == Field::Real {
            if let Some((i, j)) = best_pair_flip(p, &phases, &y, scale) {
                for k in [i, j] {
                    update(&mut y, k, -2.0 * phases[k] * scale);
                    phases[k] = -phases[k];
                }
            }
        }
        let candidate = ConstantModulusVector::from_raw(field, phases.clone());
        // Recompute so the running y does not drift.
        let cy = s.project(&candidate.to_vector())?;
        let cvalue = cy.norm2();
        if cvalue < ascent.value {
            break;
        }
        let gain = cvalue - ascent.value;
        ascent.phases = candidate;
        ascent.value = cvalue;
        ascent.trace.push(cvalue);
        y = cy.into_entries();
        if gain < ASCENT_TOL {
            break;
        }
    }
    Ok(ascent)
}

// For w = c/√n with c ∈ {±1}ⁿ and y = Pw, flipping c_i changes ‖Pw‖² by
// 4(Pᵢᵢ/n − wᵢyᵢ); flipping c_i and c_j adds a further 8 wᵢwⱼPᵢⱼ.
fn best_pair_flip(
    p: &Matrix,
    phases: &[Scalar],
    y: &[Scalar],
    scale: f64,
) -> Option<(usize, usize)> {
    let n = phases.len();
    let w: Vec<f64> = phases.iter().map(|c| c.re * scale).collect();
    let single: Vec<f64> = (0..n)
        .map(|i| 4.0 * (p.get(i, i).re * scale * scale - w[i] * y[i].re))
        .collect();
    let mut best = (ASCENT_TOL, None);
    for i in 0..n {
        for j in i + 1..n {
            let gain = single[i] + single[j] + 8.0 * w[i] * w[j] * p.get(i, j).re;
            if gain > best.0 {
                best = (gain, Some((i, j)));
            }
        }
    }
    best.1
}

fn align_phase(field: Field, y: Scalar, prev: Scalar) -> Scalar {
    match field {
        Field::Real if y.re > 0.0 => Complex64::new(1.0, 0.0),
        Field::Real if y.re < 0.0 => Complex64::new(-1.0, 0.0),
        Field::Real => prev,
        Field::Complex => {
            let m = y.norm();
            if m == 0.0 {
                prev
            } else {
                let c = y / m;
                c / c.norm()
            }
        }
    }
}

/// Uniformly random phases: signs over the reals, angles over the complex numbers.
pub fn random_phases<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    n: usize,
) -> ConstantModulusVector {
    let phases = (0..n)
        .map(|_| match field {
            Field::Real => Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0),
            Field::Complex => {
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                Complex64::from_polar(1.0, theta)
            }
        })
        .collect();
    ConstantModulusVector::from_raw(field, phases)
}

/// RNG for restart `index` under `seed`; independent of scheduling.
pub fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn subspace_constant_heuristic(
    s: &Subspace,
    restarts: usize,
    seed: u64,
) -> Result<SubspaceBoundReport> {
    subspace_constant_heuristic_with(s, restarts, seed, Execution::Parallel)
}

/// Best of `restarts` polished ascents ([`polished_ascent`]) from seeded
/// random phases. Ties go to the lowest restart index.
pub fn subspace_constant_heuristic_with(
    s: &Subspace,
    restarts: usize,
    seed: u64,
    exec: Execution,
) -> Result<SubspaceBoundReport> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let runs = exec.map_indexed(restarts, |r| {
        let init = random_phases(&mut restart_rng(seed, r), s.field(), s.ambient_dim());
        polished_ascent(s, &init)
    });
    let mut best: Option<Ascent> = None;
    for run in runs {
        let run = run?;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("restarts >= 1");
    Ok(SubspaceBoundReport::new(
        best.value,
        best.phases,
        SearchMethod::AlternatingHeuristic,
    ))
}

/// Exact search when the subspace is real and small enough, otherwise the heuristic.
pub fn subspace_constant(
    s: &Subspace,
    restarts: usize,
    seed: u64,
    exec: Execution,
) -> Result<SubspaceBoundReport> {
    if s.field() == Field::Real && s.ambient_dim() <= EXACT_SEARCH_CUTOFF {
        subspace_constant_exact_with(s, exec)
    } else {
        subspace_constant_heuristic_with(s, restarts, seed, exec)
    }
}

/// `(1 − c/2)√n` with the best available `c`, alongside the report it came from.
pub fn unit_vector_l1_bound(s: &Subspace) -> Result<(f64, SubspaceBoundReport)> {
    let report = subspace_constant(s, DEFAULT_RESTARTS, DEFAULT_SEED, Execution::Parallel)?;
    Ok((report.l1_bound(), report))
}

/// The unit vector of `S` along `P·witness`; its ℓ1 norm attains the bound.
pub fn witness_direction(s: &Subspace, witness: &ConstantModulusVector) -> Result<Vector> {
    s.project(&witness.to_vector())?.normalized()
}
