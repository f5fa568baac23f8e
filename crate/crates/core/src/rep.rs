//! Lie algebra actions on T = ℝⁿ, on Λ*T* and on Hom(T*, Λ²T*).
//!
//! A matrix `X` acts on covectors by the contragredient representation
//! `X·e^i = −Σ_j X_{ij} e^j`, extended to forms as a degree-0 derivation.
//! Elements of Hom(T*, Λ²T*) are stored as flat vectors with coordinate
//! `(i, {j<k})` at position `(i−1)·C(n,2) + rank({j,k})`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{binomial, Form, MultiIndex};
use crate::linalg::{combine, joint_kernel, rank_of_rows, span_basis, Matrix, Vector};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Lie subalgebra of 𝔰𝔬(n) given by a basis of skew matrices.
#[derive(Clone, Debug)]
pub struct LieRep {
    pub name: String,
    pub n: usize,
    pub basis: Vec<Matrix>,
}

fn flatten_matrix(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

impl LieRep {
    /// Validates skewness, linear independence and closure under the bracket.
    pub fn new(name: impl Into<String>, n: usize, basis: Vec<Matrix>) -> Result<Self> {
        let name = name.into();
        for b in &basis {
            if b.rows() != n || b.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.rows(),
                });
            }
            if !b.is_skew() {
                return Err(Error::InvalidLieAlgebra(name, "basis matrix is not skew".into()));
            }
        }
        let flat: Vec<Vector> = basis.iter().map(flatten_matrix).collect();
        if rank_of_rows(&flat, n * n) != basis.len() {
            return Err(Error::InvalidLieAlgebra(name, "basis is linearly dependent".into()));
        }
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let br = basis[a].bracket(&basis[b])?;
                let mut ext = flat.clone();
                ext.push(flatten_matrix(&br));
                if rank_of_rows(&ext, n * n) != basis.len() {
                    return Err(Error::InvalidLieAlgebra(
                        name,
                        format!("bracket of basis elements {a} and {b} leaves the span"),
                    ));
                }
            }
        }
        Ok(LieRep { name, n, basis })
    }

    /// The zero subalgebra of 𝔰𝔬(n).
    pub fn trivial(n: usize) -> Self {
        LieRep {
            name: "trivial".into(),
            n,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Elements of 𝔤 as 2-forms `Σ_{i<j} X_{ij} e^{ij}`.
    pub fn as_two_forms(&self) -> Vec<Form> {
        self.basis.iter().map(matrix_to_two_form).collect()
    }
}

/// `Σ_{i<j} X_{ij} e^{ij}`.
pub fn matrix_to_two_form(x: &Matrix) -> Form {
    let n = x.rows();
    let mut f = Form::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            f.add_term(
                MultiIndex::from_bits((1 << i) | (1 << j)),
                x.get(i, j).clone(),
            );
        }
    }
    f
}

/// Elementary matrix `E_{ij}` (0-based).
pub fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    m
}

/// Basis `E_{ij} − E_{ji}`, `i < j`, of 𝔰𝔬(n).
pub fn so_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut m = elementary(n, i, j);
            m.set(j, i, -Scalar::one());
            out.push(m);
        }
    }
    out
}

/// Images of the basis covectors: `X·e^i = −Σ_j X_{ij} e^j`.
fn covector_images(x: &Matrix) -> Vec<Form> {
    let n = x.rows();
    (0..n)
        .map(|i| {
            let mut f = Form::zero(n);
            for j in 0..n {
                let c = x.get(i, j);
                if !c.is_zero() {
                    f.add_term(MultiIndex::single(j + 1), -c);
                }
            }
            f
        })
        .collect()
}

pub fn act_on_form(x: &Matrix, a: &Form) -> Result<Form> {
    if x.rows() != a.dim() || x.cols() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: x.rows(),
        });
    }
    Ok(a.apply_derivation(&covector_images(x), 0))
}

/// Matrix of the action of `x` on Λ^p in the flattened basis.
pub fn action_on_degree(x: &Matrix, p: usize) -> Matrix {
    let n = x.rows();
    let imgs = covector_images(x);
    let basis = MultiIndex::all_of_degree(n, p);
    let cols: Vec<Vector> = basis
        .iter()
        .map(|m| {
            Form::monomial(n, *m, Scalar::one())
                .apply_derivation(&imgs, 0)
                .flatten(p)
        })
        .collect();
    Matrix::from_columns(&cols, basis.len()).expect("square")
}

/// Basis of the 𝔤-invariant p-forms (canonical echelon basis).
pub fn invariants(g: &LieRep, p: usize) -> Vec<Form> {
    let n = g.n;
    let size = binomial(n, p) as usize;
    let maps: Vec<Matrix> = g.basis.iter().map(|x| action_on_degree(x, p)).collect();
    joint_kernel(&maps, size)
        .into_iter()
        .map(|v| Form::unflatten(n, p, &v).expect("length"))
        .collect()
}

/// The `C(n,p) × n²` matrix whose column `(i,j)` (index `i·n + j`) is `E_{ij}·a`.
pub fn orbit_matrix(a: &Form) -> Result<Matrix> {
    let p = a.homogeneous_degree()?.unwrap_or(0);
    let n = a.dim();
    let mut cols = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cols.push(act_on_form(&elementary(n, i, j), a)?.flatten(p));
        }
    }
    Matrix::from_columns(&cols, binomial(n, p) as usize)
}

/// Basis of `{X : X·a = 0 for all a}`, either in 𝔤𝔩(n) or, with `skew`, in 𝔰𝔬(n).
pub fn stabilizer(forms: &[Form], skew: bool) -> Result<Vec<Matrix>> {
    let n = forms.first().map(|f| f.dim()).unwrap_or(0);
    let candidates: Vec<Matrix> = if skew {
        so_basis(n)
    } else {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| elementary(n, i, j)))
            .collect()
    };
    let mut maps = Vec::new();
    for a in forms {
        let Some(p) = a.homogeneous_degree()? else {
            continue;
        };
        let cols: Vec<Vector> = candidates
            .iter()
            .map(|x| act_on_form(x, a).map(|f| f.flatten(p)))
            .collect::<Result<_>>()?;
        maps.push(Matrix::from_columns(&cols, binomial(n, p) as usize)?);
    }
    let kernel = joint_kernel(&maps, candidates.len());
    Ok(kernel
        .iter()
        .map(|c| {
            let mut m = Matrix::zeros(n, n);
            for (coef, x) in c.iter().zip(&candidates) {
                if !coef.is_zero() {
                    m = m.add(&x.scale(coef)).expect("shape");
                }
            }
            m
        })
        .collect())
}

/// Dimension of Hom(T*, Λ²T*) = n·C(n,2).
pub fn hom_dim(n: usize) -> usize {
    n * binomial(n, 2) as usize
}

pub fn hom_index(n: usize, i: usize, pair: MultiIndex) -> usize {
    (i - 1) * binomial(n, 2) as usize + pair.rank_in(n)
}

/// Flat coordinates of the map `e^i ↦ images[i−1]` (2-forms).
pub fn hom_from_images(images: &[Form]) -> Vector {
    let n = images.len();
    let p2 = binomial(n, 2) as usize;
    let mut v = Vec::with_capacity(n * p2);
    for f in images {
        v.extend(f.flatten(2));
    }
    v
}

/// Images `D(e^i)` of a flat Hom element.
pub fn hom_to_images(n: usize, v: &[Scalar]) -> Vec<Form> {
    let p2 = binomial(n, 2) as usize;
    (0..n)
        .map(|i| Form::unflatten(n, 2, &v[i * p2..(i + 1) * p2]).expect("length"))
        .collect()
}

/// Matrix of `D ↦ X·D = X∘D − D∘X` on Hom(T*, Λ²T*).
pub fn action_on_hom(x: &Matrix) -> Matrix {
    let n = x.rows();
    let p2 = binomial(n, 2) as usize;
    let dim = n * p2;
    let pairs = MultiIndex::all_of_degree(n, 2);
    let on_two = action_on_degree(x, 2);
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..n {
        for (r, _) in pairs.iter().enumerate() {
            let col = i * p2 + r;
            // δ_{li} X·e^{jk}
            for s in 0..p2 {
                let c = on_two.get(s, r);
                if !c.is_zero() {
                    m.set(i * p2 + s, col, c.clone());
                }
            }
            // + X_{li} e^{jk}
            for l in 0..n {
                let c = x.get(l, i);
                if !c.is_zero() {
                    let row = l * p2 + r;
                    let cur = m.get(row, col).clone();
                    m.set(row, col, cur + c);
                }
            }
        }
    }
    m
}

/// Basis of the 𝔤-equivariant elements of Hom(T*, Λ²T*).
pub fn equivariant_maps(g: &LieRep) -> Vec<Vector> {
    let maps: Vec<Matrix> = g.basis.iter().map(action_on_hom).collect();
    joint_kernel(&maps, hom_dim(g.n))
}

/// Subspace `T ⊗ 𝔤` of Hom: maps with every `D(e^i) ∈ 𝔤` (as 2-forms).
pub fn tensor_with_algebra(g: &LieRep) -> Vec<Vector> {
    let n = g.n;
    let twos = g.as_two_forms();
    let mut out = Vec::new();
    for i in 0..n {
        for t in &twos {
            let mut imgs = vec![Form::zero(n); n];
            imgs[i] = t.clone();
            out.push(hom_from_images(&imgs));
        }
    }
    out
}

/// Subspace `T ⊗ 𝔤^⊥` of Hom: maps with every `D(e^i)` orthogonal to 𝔤.
pub fn tensor_with_complement(g: &LieRep) -> Vec<Vector> {
    let n = g.n;
    let p2 = binomial(n, 2) as usize;
    let twos: Vec<Vector> = g.as_two_forms().iter().map(|t| t.flatten(2)).collect();
    let perp = if twos.is_empty() {
        (0..p2)
            .map(|j| {
                let mut v = vec![Scalar::zero(); p2];
                v[j] = Scalar::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(twos, p2).expect("width").kernel()
    };
    let mut out = Vec::new();
    for i in 0..n {
        for w in &perp {
            let mut v = vec![Scalar::zero(); n * p2];
            v[i * p2..(i + 1) * p2].clone_from_slice(w);
            out.push(v);
        }
    }
    out
}

/// Image of 𝔤 ⊗ T under the structure map: for `X ∈ 𝔤` and a label `k`,
/// `e^i ↦ e^k ∧ Σ_j X_{ij} e^j`.
pub fn algebra_tensor_image(g: &LieRep) -> Vec<Vector> {
    let n = g.n;
    let mut out = Vec::new();
    for x in &g.basis {
        for k in 1..=n {
            let ek = Form::basis(n, &[k]).expect("label");
            let imgs: Vec<Form> = (0..n)
                .map(|i| {
                    let mut row = Form::zero(n);
                    for j in 0..n {
                        let c = x.get(i, j);
                        if !c.is_zero() {
                            row.add_term(MultiIndex::single(j + 1), c.clone());
                        }
                    }
                    ek.wedge(&row).expect("dim")
                })
                .collect();
            out.push(hom_from_images(&imgs));
        }
    }
    out
}

/// Spaces on which [`casimir_decompose`] can act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepSpace {
    /// T itself.
    Tangent,
    /// Λ^p T*.
    Forms(usize),
    /// Hom(T*, Λ²T*) ≅ T ⊗ Λ²T.
    Hom,
    /// T ⊗ 𝔤^⊥, realised inside Hom.
    TensorComplement,
    /// (T ⊗ Λ²T)/(𝔤 ⊗ T), the intrinsic torsion space.
    TorsionQuotient,
}

/// Irreducible components: `(irrep dimension, multiplicity)`, ascending by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub space_dim: usize,
    pub components: Vec<(usize, usize)>,
    pub method: &'static str,
}

impl Decomposition {
    pub fn component_count(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    pub fn multiplicity(&self, irrep_dim: usize) -> usize {
        self.components
            .iter()
            .find(|c| c.0 == irrep_dim)
            .map(|c| c.1)
            .unwrap_or(0)
    }
}

/// Coordinates of `v` in the basis `b` (columns); the vector must lie in the span.
fn coordinates(b: &[Vector], v: &[Scalar], dim: usize) -> Result<Vector> {
    let m = Matrix::from_columns(b, dim)?;
    let s = m.solve_affine(v)?;
    s.particular
        .ok_or_else(|| Error::Invalid("vector outside the invariant subspace".into()))
}

/// Matrix of the linear map `f` restricted to the invariant subspace spanned by `b`.
fn restricted_map(b: &[Vector], dim: usize, f: impl Fn(&[Scalar]) -> Vector) -> Result<Matrix> {
    let cols: Vec<Vector> = b
        .iter()
        .map(|v| coordinates(b, &f(v), dim))
        .collect::<Result<_>>()?;
    Matrix::from_columns(&cols, b.len())
}

struct CasimirContext {
    kappa: Rational,
}

impl CasimirContext {
    /// Calibrates `λ_j = κ·j(j+1)` from the scalar action of `Σ X_a²` on T,
    /// taken to be irreducible of spin `(n−1)/2`.
    fn calibrate(g: &LieRep) -> Result<Self> {
        if g.dim() != 3 {
            return Err(Error::NotSo3(g.dim()));
        }
        let n = g.n;
        let mut c = Matrix::zeros(n, n);
        for x in &g.basis {
            c = c.add(&x.mul(x)?)?;
        }
        let s = c.get(0, 0).clone();
        if c != Matrix::identity(n).scale(&s) {
            return Err(Error::CasimirNotScalar);
        }
        let s = s.as_rational().ok_or(Error::CasimirNotScalar)?;
        // j = (n−1)/2, j(j+1) = (n²−1)/4
        let jj = Rational::new((n * n - 1) as i64, 4)?;
        Ok(CasimirContext { kappa: s / jj })
    }

    /// `λ_j` for `j = twice_j / 2`.
    fn eigenvalue(&self, twice_j: usize) -> Scalar {
        let t = twice_j as i64;
        Scalar::from_rational(&self.kappa * &Rational::new(t * (t + 2), 4).expect("den"))
    }
}

/// Multiplicities `twice_j ↦ m` of the spin-j components of the invariant subspace `b`
/// of a representation with action matrices `acts`, by the zero-weight method:
/// each integer-spin irrep has a one-dimensional kernel of `ρ(X_1)`, on which the
/// Casimir acts by `λ_j`.
fn zero_weight_multiplicities(
    ctx: &CasimirContext,
    acts: &[Matrix],
    b: &[Vector],
    dim: usize,
) -> Result<Vec<(usize, usize)>> {
    if b.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<Vector> = b.iter().map(|v| acts[0].mul_vec(v)).collect::<Result<_>>()?;
    let coeffs = Matrix::from_columns(&images, dim)?.kernel();
    let k: Vec<Vector> = coeffs.iter().map(|c| combine(c, b, dim)).collect();
    casimir_multiplicities(ctx, acts, &k, dim, |twice_j| twice_j % 2 == 0, |_| 1)
}

/// For each admissible spin, `dim ker(C|_b − λ_j) / weight(j)`, until the eigenspaces exhaust `b`.
fn casimir_multiplicities(
    ctx: &CasimirContext,
    acts: &[Matrix],
    b: &[Vector],
    dim: usize,
    admissible: impl Fn(usize) -> bool,
    weight: impl Fn(usize) -> usize,
) -> Result<Vec<(usize, usize)>> {
    if b.is_empty() {
        return Ok(Vec::new());
    }
    let casimir = |v: &[Scalar]| -> Vector {
        let mut acc = vec![Scalar::zero(); dim];
        for a in acts {
            let av = a.mul_vec(v).expect("dim");
            let aav = a.mul_vec(&av).expect("dim");
            for (o, x) in acc.iter_mut().zip(aav) {
                *o += &x;
            }
        }
        acc
    };
    let c = restricted_map(b, dim, casimir)?;
    let size = b.len();
    let mut out = Vec::new();
    let mut accounted = 0;
    let mut twice_j = 0;
    while accounted < size {
        if twice_j > 4 * dim + 4 {
            return Err(Error::CasimirIncomplete {
                accounted,
                total: size,
            });
        }
        if admissible(twice_j) {
            let shifted = c.sub(&Matrix::identity(size).scale(&ctx.eigenvalue(twice_j)))?;
            let k = size - shifted.rank();
            if k > 0 {
                let w = weight(twice_j);
                if k % w != 0 {
                    return Err(Error::CasimirIncomplete {
                        accounted,
                        total: size,
                    });
                }
                out.push((twice_j, k / w));
                accounted += k;
            }
        }
        twice_j += 1;
    }
    Ok(out)
}

/// Action matrices of 𝔤 on the ambient space of `space` and a basis of the
/// (sub)space, plus a basis of the subspace to quotient by.
fn space_data(g: &LieRep, space: RepSpace) -> (Vec<Matrix>, usize, Vec<Vector>, Vec<Vector>) {
    let n = g.n;
    let unit = |d: usize| -> Vec<Vector> {
        (0..d)
            .map(|j| {
                let mut v = vec![Scalar::zero(); d];
                v[j] = Scalar::one();
                v
            })
            .collect()
    };
    match space {
        RepSpace::Tangent => (g.basis.clone(), n, unit(n), Vec::new()),
        RepSpace::Forms(p) => {
            let acts: Vec<Matrix> = g.basis.iter().map(|x| action_on_degree(x, p)).collect();
            let d = binomial(n, p) as usize;
            (acts, d, unit(d), Vec::new())
        }
        RepSpace::Hom => {
            let acts: Vec<Matrix> = g.basis.iter().map(action_on_hom).collect();
            let d = hom_dim(n);
            (acts, d, unit(d), Vec::new())
        }
        RepSpace::TensorComplement => {
            let acts: Vec<Matrix> = g.basis.iter().map(action_on_hom).collect();
            (acts, hom_dim(n), tensor_with_complement(g), Vec::new())
        }
        RepSpace::TorsionQuotient => {
            let acts: Vec<Matrix> = g.basis.iter().map(action_on_hom).collect();
            let d = hom_dim(n);
            let image = span_basis(&algebra_tensor_image(g), d);
            (acts, d, unit(d), image)
        }
    }
}

fn to_components(spins: &[(usize, usize)], quotient: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = spins
        .iter()
        .map(|&(tj, m)| {
            let q = quotient
                .iter()
                .find(|x| x.0 == tj)
                .map(|x| x.1)
                .unwrap_or(0);
            (tj + 1, m.saturating_sub(q))
        })
        .filter(|c| c.1 > 0)
        .collect();
    out.sort();
    out
}

/// Decomposes `space` into 𝔰𝔬(3)-irreducibles using the Casimir operator.
///
/// The zero-weight method is tried first; if its components do not account for
/// the full dimension (half-integer spins), the Casimir kernel on the whole
/// space is used instead.
pub fn casimir_decompose(g: &LieRep, space: RepSpace) -> Result<Decomposition> {
    let ctx = CasimirContext::calibrate(g)?;
    let (acts, dim, sub, quot) = space_data(g, space);
    let space_dim = sub.len() - quot.len();
    let s = zero_weight_multiplicities(&ctx, &acts, &sub, dim)?;
    let q = zero_weight_multiplicities(&ctx, &acts, &quot, dim)?;
    let comps = to_components(&s, &q);
    if comps.iter().map(|c| c.0 * c.1).sum::<usize>() == space_dim
        && q.iter().all(|x| s.iter().any(|y| y.0 == x.0 && y.1 >= x.1))
    {
        return Ok(Decomposition {
            space_dim,
            components: comps,
            method: "zero-weight",
        });
    }
    casimir_decompose_full(g, space)
}

/// Decomposition from the Casimir eigenspaces on the whole space.
pub fn casimir_decompose_full(g: &LieRep, space: RepSpace) -> Result<Decomposition> {
    let ctx = CasimirContext::calibrate(g)?;
    let (acts, dim, sub, quot) = space_data(g, space);
    let s = casimir_multiplicities(&ctx, &acts, &sub, dim, |_| true, |tj| tj + 1)?;
    let q = casimir_multiplicities(&ctx, &acts, &quot, dim, |_| true, |tj| tj + 1)?;
    let space_dim = sub.len() - quot.len();
    let comps = to_components(&s, &q);
    let total: usize = comps.iter().map(|c| c.0 * c.1).sum();
    if total != space_dim {
        return Err(Error::CasimirIncomplete {
            accounted: total,
            total: space_dim,
        });
    }
    Ok(Decomposition {
        space_dim,
        components: comps,
        method: "casimir-kernel",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, l: &[usize]) -> Form {
        Form::basis(dim, l).unwrap()
    }

    #[test]
    fn rotation_fixes_its_plane() {
        let x = so_basis(4)[0].clone();
        assert!(act_on_form(&x, &e(4, &[1, 2])).unwrap().is_zero());
        assert!(!act_on_form(&x, &e(4, &[1, 3])).unwrap().is_zero());
    }

    #[test]
    fn volume_form() {
        let vol = e(4, &[1, 2, 3, 4]);
        for x in so_basis(4) {
            assert!(act_on_form(&x, &vol).unwrap().is_zero());
        }
        // Contragredient action scales the volume by −trace.
        let mut d = Matrix::zeros(4, 4);
        d.set(0, 0, Scalar::from_int(2));
        d.set(2, 2, Scalar::from_int(3));
        assert_eq!(
            act_on_form(&d, &vol).unwrap(),
            vol.scale(&Scalar::from_int(-5))
        );
        assert_eq!(stabilizer(&[vol], true).unwrap().len(), 6);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let b = so_basis(4);
        let a = Form::parse(4, "e[1,2] + 2*e[2,4] - e[1,3]").unwrap();
        let (x, y) = (&b[0], &b[4]);
        let lhs = act_on_form(&x.bracket(y).unwrap(), &a).unwrap();
        let xy = act_on_form(x, &act_on_form(y, &a).unwrap()).unwrap();
        let yx = act_on_form(y, &act_on_form(x, &a).unwrap()).unwrap();
        assert_eq!(lhs, xy.sub(&yx).unwrap());
        let hx = action_on_hom(x);
        let hy = action_on_hom(y);
        let hb = action_on_hom(&x.bracket(y).unwrap());
        assert_eq!(hb, hx.bracket(&hy).unwrap());
    }

    #[test]
    fn full_so_n_has_no_invariant_two_forms() {
        let g = LieRep::new("so4", 4, so_basis(4)).unwrap();
        assert_eq!(invariants(&g, 2).len(), 0);
        assert_eq!(invariants(&g, 4).len(), 1);
        assert_eq!(invariants(&g, 0).len(), 1);
    }

    #[test]
    fn rejects_non_closed_span() {
        let b = so_basis(3);
        let r = LieRep::new("bad", 3, vec![b[0].clone(), b[1].clone()]);
        assert!(matches!(r, Err(Error::InvalidLieAlgebra(..))));
    }

    #[test]
    fn so3_on_r3_decomposition() {
        let g = LieRep::new("so3", 3, so_basis(3)).unwrap();
        let t = casimir_decompose(&g, RepSpace::Tangent).unwrap();
        assert_eq!(t.components, vec![(3, 1)]);
        // Λ²ℝ³ ≅ ℝ³; Hom ≅ 3⊗3 = 1+3+5
        let h = casimir_decompose(&g, RepSpace::Hom).unwrap();
        assert_eq!(h.components, vec![(1, 1), (3, 1), (5, 1)]);
        let hf = casimir_decompose_full(&g, RepSpace::Hom).unwrap();
        assert_eq!(hf.components, h.components);
        // 𝔤 = Λ², so both torsion spaces vanish.
        assert_eq!(casimir_decompose(&g, RepSpace::TensorComplement).unwrap().space_dim, 0);
        assert_eq!(casimir_decompose(&g, RepSpace::TorsionQuotient).unwrap().space_dim, 0);
    }

    #[test]
    fn reducible_tangent_space_is_rejected() {
        let emb: Vec<Matrix> = so_basis(3)
            .iter()
            .map(|m| {
                let mut big = Matrix::zeros(4, 4);
                for i in 0..3 {
                    for j in 0..3 {
                        big.set(i, j, m.get(i, j).clone());
                    }
                }
                big
            })
            .collect();
        let g = LieRep::new("so3+1", 4, emb).unwrap();
        assert_eq!(
            casimir_decompose(&g, RepSpace::Tangent),
            Err(Error::CasimirNotScalar)
        );
        let g2 = LieRep::new("so4", 4, so_basis(4)).unwrap();
        assert_eq!(casimir_decompose(&g2, RepSpace::Tangent), Err(Error::NotSo3(6)));
    }
}
