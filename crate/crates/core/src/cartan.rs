//! Reduced polar equations and Cartan's test on flags of coordinate subspaces.
//!
//! With `dθ^i = Σ_j ω_{ij} ∧ θ^j`, every form satisfies `dα = Σ_{ij} ω_{ij} ∧ L_{ij}(α)`
//! where `L_{ij}` is the degree-zero derivation `θ^i ↦ θ^j`. Contracting `dα` by `p`
//! vectors of `W` and keeping the ω-part gives the functional
//! `ω ↦ Σ_{ij} L_{ij}(α)(v_1, …, v_p) ω_{ij}` on 𝔤𝔩(T); `c(W)` is the rank of all of them.

use serde::Serialize;

use crate::catalog::{FlagSpec, StructureSpec};
use crate::dga::{codim_z0, Algebra};
use crate::error::{Error, Result};
use crate::exterior::{binomial, Form, MultiIndex, Subspace};
use crate::linalg::{rank_of_rows, Matrix, Vector};
use crate::rep::orbit_matrix;

/// `L_{ij}(a)` for 1-based labels.
pub fn frame_derivative(a: &Form, i: usize, j: usize) -> Form {
    let n = a.dim();
    let mut images = vec![Form::zero(n); n];
    images[i - 1] = Form::basis(n, &[j]).expect("label");
    a.apply_derivation(&images, 0)
}

/// The polar functionals of a list of forms, one `C(n,p) × n²` block per form.
#[derive(Clone, Debug)]
pub struct PolarSystem {
    pub n: usize,
    blocks: Vec<(usize, Matrix)>,
    derivatives: Vec<Vec<Form>>,
}

impl PolarSystem {
    pub fn new(n: usize, forms: &[Form]) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut derivatives = Vec::new();
        for g in forms {
            let Some(p) = g.homogeneous_degree()? else {
                continue;
            };
            let mut m = Matrix::zeros(binomial(n, p) as usize, n * n);
            let mut ders = Vec::with_capacity(n * n);
            for i in 1..=n {
                for j in 1..=n {
                    let b = frame_derivative(g, i, j);
                    for (idx, c) in b.terms() {
                        m.set(idx.rank_in(n), (i - 1) * n + (j - 1), c.clone());
                    }
                    ders.push(b);
                }
            }
            blocks.push((p, m));
            derivatives.push(ders);
        }
        Ok(PolarSystem {
            n,
            blocks,
            derivatives,
        })
    }

    /// `c(W)` for the coordinate subspace with label bitmask `mask` (bit `l−1` for label `l`).
    pub fn c_of_mask(&self, mask: u32) -> usize {
        let mut rows: Vec<Vector> = Vec::new();
        for (p, m) in &self.blocks {
            for (r, s) in MultiIndex::all_of_degree(self.n, *p).into_iter().enumerate() {
                if s.bits() & !mask == 0 {
                    rows.push(m.row(r).to_vec());
                }
            }
        }
        rank_of_rows(&rows, self.n * self.n)
    }

    /// `c(W)` for an arbitrary subspace.
    pub fn c_of_subspace(&self, w: &Subspace) -> Result<usize> {
        if let Some(labels) = w.coordinate_labels() {
            return Ok(self.c_of_mask(labels_mask(&labels)));
        }
        let k = w.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for ((p, _), ders) in self.blocks.iter().zip(&self.derivatives) {
            let mut m = Matrix::zeros(binomial(k, *p) as usize, self.n * self.n);
            for (col, b) in ders.iter().enumerate() {
                for (idx, c) in b.restrict(w)?.terms() {
                    m.set(idx.rank_in(k), col, c.clone());
                }
            }
            rows.extend(m.row_vectors());
        }
        Ok(rank_of_rows(&rows, self.n * self.n))
    }
}

pub fn labels_mask(labels: &[usize]) -> u32 {
    labels.iter().fold(0, |m, &l| m | (1 << (l - 1)))
}

/// Bitmask of `W_k` for each `k = 0..=n`.
pub fn flag_masks(flag: &FlagSpec) -> Vec<u32> {
    let mut out = vec![0u32];
    for &l in &flag.insertion_order {
        let last = *out.last().expect("nonempty");
        out.push(last | (1 << (l - 1)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarReport {
    pub flag: Vec<usize>,
    /// `c(W_0), …, c(W_n)`.
    pub c_values: Vec<usize>,
    pub codim_z0: usize,
    /// `Σ_{k<n} c(W_k)`.
    pub sum_c_partial: usize,
    pub ordinary: bool,
    /// Positions `k` such that some ordinary flag passes through `W_k`.
    pub relatively_admissible_positions: Vec<usize>,
}

/// Best achievable `Σ c` over coordinate flags, by dynamic programming over subsets.
#[derive(Clone, Debug, Serialize)]
pub struct FlagSearch {
    pub codim_z0: usize,
    pub best_sum: usize,
    pub best_flag: FlagSpec,
    pub ordinary_exists: bool,
    #[serde(skip)]
    c: Vec<usize>,
    #[serde(skip)]
    forward: Vec<usize>,
    #[serde(skip)]
    backward: Vec<usize>,
}

impl FlagSearch {
    pub fn c_of_mask(&self, mask: u32) -> usize {
        self.c[mask as usize]
    }

    /// Whether an ordinary flag passes through the coordinate subspace `mask`.
    pub fn through(&self, mask: u32) -> bool {
        self.forward[mask as usize] + self.backward[mask as usize] == self.codim_z0
    }
}

/// Largest `n` for which the exhaustive subset search is attempted.
pub const SEARCH_MAX_DIM: usize = 12;

pub fn search_flags(system: &PolarSystem, codim: usize) -> Result<FlagSearch> {
    let n = system.n;
    if n > SEARCH_MAX_DIM {
        return Err(Error::UnsupportedDimension {
            name: "flag search".into(),
            n,
        });
    }
    let full = (1u32 << n) - 1;
    let size = 1usize << n;
    let c: Vec<usize> = (0..size as u32).map(|m| system.c_of_mask(m)).collect();
    // forward[S]: max over chains ∅ ⊂ … ⊂ S of Σ c over the members strictly below S.
    let mut forward = vec![0usize; size];
    let mut pred = vec![0u32; size];
    for s in 1..size {
        let mut best = None;
        for l in 0..n {
            if s & (1 << l) != 0 {
                let t = s & !(1 << l);
                let v = forward[t] + c[t];
                if best.is_none_or(|(b, _)| v > b) {
                    best = Some((v, t));
                }
            }
        }
        let (v, t) = best.expect("nonempty set");
        forward[s] = v;
        pred[s] = t as u32;
    }
    // backward[S]: max over chains S ⊂ … ⊂ T of Σ c over the members other than T.
    let mut backward = vec![0usize; size];
    for s in (0..full as usize).rev() {
        let mut best = 0;
        for l in 0..n {
            if s & (1 << l) == 0 {
                best = best.max(backward[s | (1 << l)]);
            }
        }
        backward[s] = c[s] + best;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let t = pred[s as usize];
        order.push((s & !t).trailing_zeros() as usize + 1);
        s = t;
    }
    order.reverse();
    let best_sum = forward[full as usize];
    if best_sum > codim {
        return Err(Error::CartanInequality {
            sum: best_sum,
            codim,
        });
    }
    Ok(FlagSearch {
        codim_z0: codim,
        best_sum,
        best_flag: FlagSpec::new(n, order)?,
        ordinary_exists: best_sum == codim,
        c,
        forward,
        backward,
    })
}

/// Cartan's test for a flag, given the forms generating the algebra.
pub fn flag_test_forms(n: usize, forms: &[Form], flag: &FlagSpec) -> Result<PolarReport> {
    let system = PolarSystem::new(n, forms)?;
    let codim = codim_z0(n, forms)?;
    flag_test_system(&system, codim, flag)
}

pub fn flag_test_system(system: &PolarSystem, codim: usize, flag: &FlagSpec) -> Result<PolarReport> {
    let n = system.n;
    let masks = flag_masks(flag);
    let c_values: Vec<usize> = masks.iter().map(|&m| system.c_of_mask(m)).collect();
    let sum: usize = c_values[..n].iter().sum();
    if sum > codim {
        return Err(Error::CartanInequality { sum, codim });
    }
    let ordinary = sum == codim;
    let relatively_admissible_positions = if ordinary {
        (0..=n).collect()
    } else if n <= SEARCH_MAX_DIM {
        let search = search_flags(system, codim)?;
        (0..=n).filter(|&k| search.through(masks[k])).collect()
    } else {
        Vec::new()
    };
    Ok(PolarReport {
        flag: flag.insertion_order.clone(),
        c_values,
        codim_z0: codim,
        sum_c_partial: sum,
        ordinary,
        relatively_admissible_positions,
    })
}

pub fn flag_test(s: &StructureSpec, flag: &FlagSpec) -> Result<PolarReport> {
    flag_test_forms(s.n, &s.generator_forms(), flag)
}

pub fn polar_dimension(s: &StructureSpec, w: &Subspace) -> Result<usize> {
    PolarSystem::new(s.n, &s.generator_forms())?.c_of_subspace(w)
}

pub fn search(s: &StructureSpec) -> Result<FlagSearch> {
    let gens = s.generator_forms();
    let system = PolarSystem::new(s.n, &gens)?;
    search_flags(&system, codim_z0(s.n, &gens)?)
}

/// Whether some ordinary flag passes through the coordinate subspace with the given labels.
pub fn relatively_admissible(s: &StructureSpec, labels: &[usize]) -> Result<bool> {
    let mask = labels_mask(labels);
    let report = flag_test(s, &s.default_flag)?;
    if report.ordinary && flag_masks(&s.default_flag).contains(&mask) {
        return Ok(true);
    }
    Ok(search(s)?.through(mask))
}

/// `c(W)` computed from the generators alone and from every element of the span-closure.
#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub generators_only: usize,
    pub with_products: usize,
}

pub fn debug_product_rank(s: &StructureSpec, w: &Subspace) -> Result<ProductCheck> {
    let generators_only = polar_dimension(s, w)?;
    let algebra = Algebra::new(s.n, s.generators.clone())?;
    let all: Vec<Form> = algebra
        .pieces
        .iter()
        .skip(1)
        .flat_map(|p| p.basis_forms())
        .collect();
    let with_products = PolarSystem::new(s.n, &all)?.c_of_subspace(w)?;
    Ok(ProductCheck {
        generators_only,
        with_products,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StableFlagReport {
    pub hyperplane: usize,
    pub degree: usize,
    pub polar: PolarReport,
    /// E_k-stability of the form for `k = 0..n−1`, from the orbit matrix.
    pub e_stable_levels: Vec<bool>,
    /// `c(E_k) = C(k,p)` at every level where the form is E_k-stable.
    pub binomial_ok: bool,
    /// `Σ_{k=p}^{n−1} C(k,p)`.
    pub binomial_sum: u64,
    /// `C(n, p+1)`.
    pub equation_bound: u64,
    pub hockey_stick_ok: bool,
}

/// The flag inserting every label except `i` in increasing order, then `i`.
pub fn flag_ending_at_hyperplane(n: usize, i: usize) -> Result<FlagSpec> {
    let mut order: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    order.push(i);
    FlagSpec::new(n, order)
}

pub fn stable_flag_test(a: &Form, i: usize) -> Result<StableFlagReport> {
    let n = a.dim();
    let p = a.homogeneous_degree()?.ok_or(Error::NotHomogeneous)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let flag = flag_ending_at_hyperplane(n, i)?;
    let polar = flag_test_forms(n, std::slice::from_ref(a), &flag)?;
    let orbit = orbit_matrix(a)?;
    let all = MultiIndex::all_of_degree(n, p);
    let masks = flag_masks(&flag);
    let e_stable_levels: Vec<bool> = masks[..n]
        .iter()
        .enumerate()
        .map(|(k, &mask)| {
            let rows: Vec<Vector> = all
                .iter()
                .enumerate()
                .filter(|(_, s)| s.bits() & !mask == 0)
                .map(|(r, _)| orbit.row(r).to_vec())
                .collect();
            rank_of_rows(&rows, n * n) == binomial(k, p) as usize
        })
        .collect();
    let binomial_ok = (0..n)
        .filter(|&k| e_stable_levels[k])
        .all(|k| polar.c_values[k] == binomial(k, p) as usize);
    let binomial_sum: u64 = (p..n).map(|k| binomial(k, p)).sum();
    let equation_bound = binomial(n, p + 1);
    let hockey_stick_ok =
        binomial_sum == equation_bound && polar.codim_z0 as u64 == equation_bound;
    Ok(StableFlagReport {
        hyperplane: i,
        degree: p,
        polar,
        e_stable_levels,
        binomial_ok,
        binomial_sum,
        equation_bound,
        hockey_stick_ok,
    })
}

fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Closed form for `c(W_k)`, `k < 2n`, on the default flag of 𝔰𝔲(n) ⊂ 𝔰𝔬(2n).
pub fn su_even_closed_form(n: usize, k: usize) -> i64 {
    let (n, k) = (n as i64, k as i64);
    if k < n {
        choose2(k)
    } else {
        2 - 3 * n * n + 4 * n * k - n - choose2(k)
    }
}

/// The case formulas as printed for 𝔰𝔲(n) ⊂ 𝔰𝔬(2n+1), `k ≤ 2n`.
pub fn su_odd_printed_form(n: usize, k: usize) -> i64 {
    let (n, k) = (n as i64, k as i64);
    if k < n {
        choose2(k) + k
    } else if k == n {
        2 + choose2(n) + n
    } else if k < 2 * n {
        2 - 3 * n * n + 4 * n * k - n - choose2(k) + k
    } else {
        3 * n + 2 - 3 * n * n + 3 * n * (2 * n - 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaRow {
    pub k: usize,
    pub computed: usize,
    pub printed: i64,
    pub matches: bool,
}

pub fn compare_with(c_values: &[usize], upto: usize, formula: impl Fn(usize) -> i64) -> Vec<FormulaRow> {
    (0..upto)
        .map(|k| {
            let printed = formula(k);
            FormulaRow {
                k,
                computed: c_values[k],
                printed,
                matches: printed == c_values[k] as i64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_structure;
    use crate::scalar::Scalar;

    #[test]
    fn trivial_subspace_has_no_equations() {
        let s = get_structure("su-even", Some(2)).unwrap();
        let w = Subspace::coordinate(4, &[]).unwrap();
        assert_eq!(polar_dimension(&s, &w).unwrap(), 0);
    }

    #[test]
    fn su2_table() {
        let s = get_structure("su-even", Some(2)).unwrap();
        let r = flag_test(&s, &s.default_flag).unwrap();
        assert_eq!(r.c_values[..4], [0, 0, 3, 9]);
        assert_eq!(r.sum_c_partial, 12);
        assert!(r.ordinary);
    }

    #[test]
    fn monotone_along_flags() {
        let s = get_structure("su-odd", Some(2)).unwrap();
        let r = flag_test(&s, &FlagSpec::standard(5)).unwrap();
        assert!(r.c_values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn general_subspace_matches_rotated_coordinate_subspace() {
        // Scaling the basis of a coordinate subspace does not change c(W).
        let s = get_structure("su-even", Some(2)).unwrap();
        let sys = PolarSystem::new(4, &s.generator_forms()).unwrap();
        let basis = [1usize, 3, 2]
            .iter()
            .map(|&l| {
                let mut v = vec![Scalar::zero(); 4];
                v[l - 1] = Scalar::from_int(3);
                v
            })
            .collect();
        let w = Subspace::new(4, basis).unwrap();
        assert_eq!(sys.c_of_subspace(&w).unwrap(), sys.c_of_mask(labels_mask(&[1, 2, 3])));
    }

    #[test]
    fn search_finds_a_flag_for_a_degenerate_two_form() {
        let a = Form::parse(7, "e[1,2] + e[3,4]").unwrap();
        let sys = PolarSystem::new(7, std::slice::from_ref(&a)).unwrap();
        let codim = codim_z0(7, std::slice::from_ref(&a)).unwrap();
        let found = search_flags(&sys, codim).unwrap();
        assert!(found.ordinary_exists);
        let r = flag_test_system(&sys, codim, &found.best_flag).unwrap();
        assert!(r.ordinary);
    }

    #[test]
    fn closed_forms_at_small_n() {
        assert_eq!((0..4).map(|k| su_even_closed_form(2, k)).collect::<Vec<_>>(), [0, 0, 3, 9]);
        assert_eq!((0..5).map(|k| su_odd_printed_form(2, k)).sum::<i64>(), 32);
    }
}
