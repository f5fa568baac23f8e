//! Stability and E-stability of forms, through ranks of infinitesimal 𝔤𝔩(n)-orbits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{binomial, Form, Subspace};
use crate::linalg::{rank_of_rows, Matrix, Vector};
use crate::rep::orbit_matrix;
use crate::scalar::Scalar;

/// Seed of the fixed family of non-coordinate hyperplanes used by the sampled check.
pub const SAMPLE_SEED: u64 = 0x005e_ed0f_f075;
pub const SAMPLE_COUNT: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct SampledCheck {
    /// Always "sampled": a finite family cannot certify a statement about all hyperplanes.
    pub label: &'static str,
    pub hyperplanes: Vec<Vec<i64>>,
    pub e_stable: Vec<bool>,
}

impl SampledCheck {
    pub fn all_e_stable(&self) -> bool {
        self.e_stable.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub n: usize,
    pub degree: usize,
    pub orbit_dim: usize,
    pub full_dim: usize,
    pub stabilizer_dim: usize,
    pub stable: bool,
    /// Entry `i − 1` tells whether the form is `e_i^⊥`-stable.
    pub per_hyperplane: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<SampledCheck>,
}

impl StabilityReport {
    /// Labels `i` (1-based) with `per_hyperplane` true.
    pub fn e_stable_labels(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.per_hyperplane[i - 1]).collect()
    }
}

fn degree_of(a: &Form) -> Result<usize> {
    match a.homogeneous_degree()? {
        Some(p) => Ok(p),
        None => Err(Error::NotHomogeneous),
    }
}

/// Rank of the orbit columns after dropping every row whose monomial involves label `i`.
fn hyperplane_rank(orbit: &Matrix, n: usize, p: usize, i: usize) -> usize {
    let keep: Vec<usize> = crate::exterior::MultiIndex::all_of_degree(n, p)
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.contains(i))
        .map(|(r, _)| r)
        .collect();
    let rows: Vec<Vector> = keep.iter().map(|&r| orbit.row(r).to_vec()).collect();
    rank_of_rows(&rows, orbit.cols())
}

/// Whether `a` is E-stable: the orbit 𝔤𝔩(n)·a restricts onto all of Λ^p E*.
pub fn is_e_stable(a: &Form, e: &Subspace) -> Result<bool> {
    let p = degree_of(a)?;
    let n = a.dim();
    if let Some(labels) = e.coordinate_labels() {
        if labels.len() + 1 == n {
            let missing = (1..=n).find(|l| !labels.contains(l)).expect("hyperplane");
            let orbit = orbit_matrix(a)?;
            return Ok(hyperplane_rank(&orbit, n, p, missing) == binomial(n - 1, p) as usize);
        }
    }
    let k = e.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let moved = crate::rep::act_on_form(&crate::rep::elementary(n, i, j), a)?;
            rows.push(moved.restrict(e)?.flatten(p));
        }
    }
    Ok(rank_of_rows(&rows, binomial(k, p) as usize) == binomial(k, p) as usize)
}

/// Kernel of the covector `u` as a subspace of ℝⁿ.
pub fn hyperplane(u: &[i64]) -> Result<Subspace> {
    let n = u.len();
    let row: Vector = u.iter().map(|&x| Scalar::from_int(x)).collect();
    let m = Matrix::from_rows(vec![row], n)?;
    Subspace::new(n, m.kernel())
}

/// The fixed family of non-coordinate hyperplanes: covectors with entries in −5..=5
/// and at least two nonzero entries.
pub fn sampled_hyperplanes(n: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut out = Vec::with_capacity(SAMPLE_COUNT);
    while out.len() < SAMPLE_COUNT {
        let u: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        if u.iter().filter(|&&x| x != 0).count() >= 2 && !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

pub fn stability(a: &Form) -> Result<StabilityReport> {
    stability_with(a, false)
}

pub fn stability_with(a: &Form, sampled: bool) -> Result<StabilityReport> {
    let p = degree_of(a)?;
    let n = a.dim();
    let orbit = orbit_matrix(a)?;
    let orbit_dim = orbit.rank();
    let full_dim = binomial(n, p) as usize;
    let per_hyperplane = (1..=n)
        .map(|i| hyperplane_rank(&orbit, n, p, i) == binomial(n - 1, p) as usize)
        .collect();
    let sampled = if sampled {
        let hyperplanes = sampled_hyperplanes(n);
        let e_stable = hyperplanes
            .iter()
            .map(|u| is_e_stable(a, &hyperplane(u)?))
            .collect::<Result<_>>()?;
        Some(SampledCheck {
            label: "sampled",
            hyperplanes,
            e_stable,
        })
    } else {
        None
    };
    Ok(StabilityReport {
        n,
        degree: p,
        orbit_dim,
        full_dim,
        stabilizer_dim: n * n - orbit_dim,
        stable: orbit_dim == full_dim,
        per_hyperplane,
        sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_form_is_stable() {
        let w = Form::parse(4, "e[1,2] + e[3,4]").unwrap();
        let r = stability(&w).unwrap();
        assert!(r.stable);
        assert_eq!(r.stabilizer_dim, 10);
        assert!(r.per_hyperplane.iter().all(|&b| b));
    }

    #[test]
    fn degenerate_two_form_in_seven_dimensions() {
        let w = Form::parse(7, "e[1,2] + e[3,4]").unwrap();
        let r = stability(&w).unwrap();
        assert!(!r.stable);
        assert!(r.per_hyperplane.iter().all(|&b| !b));
    }

    #[test]
    fn coordinate_and_general_paths_agree() {
        let a = Form::parse(5, "e[1,2,3] + e[1,4,5] + 2*e[2,4,5]").unwrap();
        let r = stability(&a).unwrap();
        for i in 1..=5 {
            // Scaled basis vectors force the general pullback path.
            let basis = (1..=5)
                .filter(|&j| j != i)
                .map(|j| {
                    let mut v = vec![Scalar::zero(); 5];
                    v[j - 1] = Scalar::from_int(2);
                    v
                })
                .collect();
            let e = Subspace::new(5, basis).unwrap();
            assert!(e.coordinate_labels().is_none());
            assert_eq!(is_e_stable(&a, &e).unwrap(), r.per_hyperplane[i - 1]);
        }
    }

    #[test]
    fn sampled_family_is_fixed() {
        assert_eq!(sampled_hyperplanes(8), sampled_hyperplanes(8));
        assert_eq!(sampled_hyperplanes(8).len(), SAMPLE_COUNT);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let a = Form::parse(3, "e[1] + e[2,3]").unwrap();
        assert!(stability(&a).is_err());
    }
}
