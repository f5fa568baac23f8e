//! Differential operators on a subalgebra A ⊂ Λ*T* and the spaces of integral
//! elements Z_f ⊂ 𝔤𝔩(n)⊗T, Z'_f ⊂ Hom(T*, Λ²T*) and Z''_f in the torsion quotient.
//!
//! Structure equation convention: `dθ^i = Σ_j ω_{ij} ∧ θ^j`. The elementary
//! element `ω_{ij} = θ^k` of 𝔤𝔩(n)⊗T therefore maps to the derivation
//! `θ^i ↦ θ^k ∧ θ^j`, and the kernel of 𝔤𝔩(n)⊗T → Hom is T⊗S²T.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{DiffOpSpec, StructureSpec};
use crate::error::{Error, Result};
use crate::exterior::{binomial, Form, MultiIndex};
use crate::linalg::{combine, is_zero_vector, rank_of_rows, span_basis, AffineSpace, Matrix, Vector};
use crate::rep::{
    action_on_hom, algebra_tensor_image, equivariant_maps, hom_dim, hom_to_images, invariants,
    LieRep,
};
use crate::scalar::Scalar;

/// A product of generators (indices into the generator list, nondecreasing).
pub type Monomial = Vec<usize>;

/// One graded piece of the span-closure.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    pub forms: Vec<Form>,
    /// Indices into `monomials` forming a basis (greedy, in enumeration order).
    pub basis: Vec<usize>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_forms(&self) -> Vec<Form> {
        self.basis.iter().map(|&i| self.forms[i].clone()).collect()
    }
}

/// The subalgebra generated by a list of forms, materialised degree by degree.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub n: usize,
    pub generators: Vec<(String, Form)>,
    pub gen_degrees: Vec<usize>,
    pub pieces: Vec<GradedPiece>,
}

impl Algebra {
    pub fn new(n: usize, generators: Vec<(String, Form)>) -> Result<Self> {
        let mut gen_degrees = Vec::new();
        for (name, g) in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.dim(),
                });
            }
            match g.homogeneous_degree()? {
                Some(d) if d > 0 => gen_degrees.push(d),
                _ => {
                    return Err(Error::Invalid(format!(
                        "generator `{name}` must be a nonzero form of positive degree"
                    )))
                }
            }
        }
        // Enumerate nondecreasing generator sequences by total degree.
        let mut by_degree: Vec<Vec<(Monomial, Form)>> = vec![Vec::new(); n + 1];
        by_degree[0].push((Vec::new(), Form::constant(n, Scalar::one())));
        let mut frontier: Vec<(Monomial, Form, usize)> =
            vec![(Vec::new(), Form::constant(n, Scalar::one()), 0)];
        while let Some((m, f, deg)) = frontier.pop() {
            let start = m.last().copied().unwrap_or(0);
            for (gi, d) in gen_degrees.iter().enumerate().skip(start) {
                let nd = deg + d;
                if nd > n {
                    continue;
                }
                let mut nm = m.clone();
                nm.push(gi);
                let nf = f.wedge(&generators[gi].1)?;
                by_degree[nd].push((nm.clone(), nf.clone()));
                frontier.push((nm, nf, nd));
            }
        }
        let mut pieces = Vec::with_capacity(n + 1);
        for (p, mut items) in by_degree.into_iter().enumerate() {
            items.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
            let mut basis = Vec::new();
            let mut rows: Vec<Vector> = Vec::new();
            for (idx, (_, f)) in items.iter().enumerate() {
                let v = f.flatten(p);
                if is_zero_vector(&v) {
                    continue;
                }
                rows.push(v);
                if rank_of_rows(&rows, binomial(n, p) as usize) == basis.len() + 1 {
                    basis.push(idx);
                } else {
                    rows.pop();
                }
            }
            let (monomials, forms) = items.into_iter().unzip();
            pieces.push(GradedPiece {
                degree: p,
                monomials,
                forms,
                basis,
            });
        }
        Ok(Algebra {
            n,
            generators,
            gen_degrees,
            pieces,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&i| self.generators[i].0.as_str())
            .collect::<Vec<_>>()
            .join("^")
    }

    /// Coordinates of `f` in the basis of the degree-p piece, or `None` if `f ∉ A`.
    pub fn coordinates(&self, f: &Form) -> Result<Option<(usize, Vector)>> {
        let Some(p) = f.homogeneous_degree()? else {
            return Ok(Some((0, Vec::new())));
        };
        let piece = &self.pieces[p];
        let cols: Vec<Vector> = piece.basis.iter().map(|&i| piece.forms[i].flatten(p)).collect();
        if cols.is_empty() {
            return Ok(None);
        }
        let m = Matrix::from_columns(&cols, binomial(self.n, p) as usize)?;
        Ok(m.solve_affine(&f.flatten(p))?.particular.map(|c| (p, c)))
    }

    pub fn contains(&self, f: &Form) -> Result<bool> {
        Ok(self.coordinates(f)?.is_some())
    }

    /// Leibniz expansion `Σ ± g_1 ⋯ f(g_i) ⋯ g_k` of an operator given on generators.
    pub fn leibniz(&self, m: &Monomial, values: &[Form]) -> Result<Form> {
        let mut out = Form::zero(self.n);
        let mut sign_deg = 0usize;
        for i in 0..m.len() {
            let mut term = Form::constant(self.n, Scalar::one());
            for (j, &g) in m.iter().enumerate() {
                let factor = if i == j { &values[g] } else { &self.generators[g].1 };
                term = term.wedge(factor)?;
                if term.is_zero() {
                    break;
                }
            }
            if sign_deg % 2 == 1 {
                term = term.neg();
            }
            out = out.add(&term)?;
            sign_deg += self.gen_degrees[m[i]];
        }
        Ok(out)
    }

    /// Linear relations among monomial products in each degree (kernel of monomials → forms).
    pub fn relations(&self) -> Vec<(usize, Vec<(Monomial, Scalar)>)> {
        let mut out = Vec::new();
        for piece in &self.pieces {
            if piece.monomials.len() <= piece.dim() {
                continue;
            }
            let size = binomial(self.n, piece.degree) as usize;
            let cols: Vec<Vector> = piece.forms.iter().map(|f| f.flatten(piece.degree)).collect();
            let m = Matrix::from_columns(&cols, size).expect("rows");
            for k in m.kernel() {
                let rel = k
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (piece.monomials[i].clone(), c))
                    .collect();
                out.push((piece.degree, rel));
            }
        }
        out
    }
}

/// The extension of `D ∈ Hom(T*, Λ²T*)` to a degree-one derivation, applied to `a`.
pub fn derivation_apply(images: &[Form], a: &Form) -> Form {
    a.apply_derivation(images, 1)
}

/// The derivation `e^i ↦ e_i ⌟ ψ` (shift deg ψ − 2 on generators of degree one).
pub fn contraction_derivation(psi: &Form) -> Vec<Form> {
    (1..=psi.dim()).map(|i| psi.contract_basis(i)).collect()
}

/// Linear map `D ↦ (D(g))_g` from Hom(T*, Λ²T*) to `⊕_g Λ^{deg g + 1}`.
pub fn extension_matrix(n: usize, generators: &[Form]) -> Result<Matrix> {
    let p2 = binomial(n, 2) as usize;
    let pairs = MultiIndex::all_of_degree(n, 2);
    let mut offsets = Vec::new();
    let mut rows = 0;
    for g in generators {
        let p = g.homogeneous_degree()?.unwrap_or(0);
        offsets.push((rows, p + 1));
        rows += binomial(n, p + 1) as usize;
    }
    let mut m = Matrix::zeros(rows, n * p2);
    let mut images = vec![Form::zero(n); n];
    for i in 0..n {
        for (r, pair) in pairs.iter().enumerate() {
            images[i] = Form::monomial(n, *pair, Scalar::one());
            let col = i * p2 + r;
            for (g, &(off, q)) in generators.iter().zip(&offsets) {
                let v = derivation_apply(&images, g);
                for (idx, c) in v.terms() {
                    if idx.degree() == q {
                        m.set(off + idx.rank_in(n), col, c.clone());
                    }
                }
            }
            images[i] = Form::zero(n);
        }
    }
    Ok(m)
}

fn stacked_rhs(n: usize, generators: &[Form], values: &[Form]) -> Result<Vector> {
    let mut rhs = Vec::new();
    for (g, v) in generators.iter().zip(values) {
        let p = g.homogeneous_degree()?.unwrap_or(0);
        if !v.is_zero() && v.degree() != Some(p + 1) {
            return Err(Error::DegreeMismatch {
                generator: g.to_string(),
                expected: p + 1,
                found: v.degree().unwrap_or(0),
            });
        }
        rhs.extend(v.flatten(p + 1));
    }
    debug_assert!(rhs.len() == generators.iter().map(|g| binomial(n, g.degree().unwrap_or(0) + 1) as usize).sum());
    Ok(rhs)
}

/// Image of the elementary element `ω_{ij} = θ^k` (1-based) of 𝔤𝔩(n)⊗T in Hom.
pub fn gl_tensor_image(n: usize, i: usize, j: usize, k: usize) -> Vector {
    let mut imgs = vec![Form::zero(n); n];
    imgs[i - 1] = Form::basis(n, &[k, j]).expect("labels");
    crate::rep::hom_from_images(&imgs)
}

/// Serializable element of Hom(T*, Λ²T*): the images `D(e^i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomElement {
    pub images: Vec<Form>,
}

impl HomElement {
    pub fn from_vector(n: usize, v: &[Scalar]) -> Self {
        HomElement {
            images: hom_to_images(n, v),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Form::is_zero)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OpCheck {
    pub leibniz_ok: bool,
    pub square_zero_ok: bool,
    pub extends_ok: bool,
    pub extension_witness: Option<HomElement>,
    pub equivariant_witness: Option<HomElement>,
    pub relations_checked: usize,
    pub failures: Vec<String>,
}

impl OpCheck {
    pub fn all_ok(&self) -> bool {
        self.leibniz_ok && self.square_zero_ok && self.extends_ok
    }
}

/// An operator with concrete values on the generators of an algebra.
pub struct Operator<'a> {
    pub algebra: &'a Algebra,
    pub values: Vec<Form>,
}

impl<'a> Operator<'a> {
    /// Validates degrees and membership of every value in A.
    pub fn new(algebra: &'a Algebra, values: Vec<Form>) -> Result<Self> {
        for ((name, g), v) in algebra.generators.iter().zip(&values) {
            let p = g.degree().unwrap_or(0);
            if v.is_zero() {
                continue;
            }
            match v.degree() {
                Some(d) if d == p + 1 => {}
                other => {
                    return Err(Error::DegreeMismatch {
                        generator: name.clone(),
                        expected: p + 1,
                        found: other.unwrap_or(0),
                    })
                }
            }
            if !algebra.contains(v)? {
                return Err(Error::NotInAlgebra {
                    generator: name.clone(),
                });
            }
        }
        Ok(Operator { algebra, values })
    }

    /// Value of the operator on an arbitrary element of A.
    pub fn apply(&self, a: &Form) -> Result<Form> {
        let mut out = Form::zero(self.algebra.n);
        for p in 0..=self.algebra.n {
            let part = a.part_of_degree(p);
            if part.is_zero() {
                continue;
            }
            let (_, coords) = self
                .algebra
                .coordinates(&part)?
                .ok_or_else(|| Error::NotInAlgebra {
                    generator: part.to_string(),
                })?;
            let piece = &self.algebra.pieces[p];
            for (c, &bi) in coords.iter().zip(&piece.basis) {
                if !c.is_zero() {
                    let v = self.algebra.leibniz(&piece.monomials[bi], &self.values)?;
                    out = out.add(&v.scale(c))?;
                }
            }
        }
        Ok(out)
    }
}

/// Leibniz consistency, `f² = 0`, and existence of a degree-one derivation extending `f`.
pub fn check_values(algebra: &Algebra, lie: &LieRep, values: Vec<Form>) -> Result<OpCheck> {
    let n = algebra.n;
    let op = Operator::new(algebra, values)?;
    let mut failures = Vec::new();

    let relations = algebra.relations();
    let mut leibniz_ok = true;
    for (deg, rel) in &relations {
        let mut acc = Form::zero(n);
        for (m, c) in rel {
            acc = acc.add(&algebra.leibniz(m, &op.values)?.scale(c))?;
        }
        if !acc.is_zero() {
            leibniz_ok = false;
            let terms: Vec<String> = rel
                .iter()
                .map(|(m, c)| format!("({c})*{}", algebra.monomial_name(m)))
                .collect();
            failures.push(format!(
                "Leibniz rule violated on degree-{deg} relation {} = 0",
                terms.join(" + ")
            ));
        }
    }

    let mut square_zero_ok = true;
    for ((name, _), v) in algebra.generators.iter().zip(&op.values) {
        let ff = op.apply(v)?;
        if !ff.is_zero() {
            square_zero_ok = false;
            failures.push(format!("f(f({name})) = {ff} is nonzero"));
        }
    }

    let gens: Vec<Form> = algebra.generators.iter().map(|g| g.1.clone()).collect();
    let m = extension_matrix(n, &gens)?;
    let rhs = stacked_rhs(n, &gens, &op.values)?;
    let z = m.solve_affine(&rhs)?;
    let extension_witness = z.particular.as_ref().map(|p| HomElement::from_vector(n, p));
    let extends_ok = extension_witness.is_some();
    if !extends_ok {
        failures.push("no degree-one derivation of Λ*T* extends f".into());
    }
    let equivariant_witness = if extends_ok {
        equivariant_solution(lie, &m, &rhs)?.map(|v| HomElement::from_vector(n, &v))
    } else {
        None
    };
    Ok(OpCheck {
        leibniz_ok,
        square_zero_ok,
        extends_ok,
        extension_witness,
        equivariant_witness,
        relations_checked: relations.len(),
        failures,
    })
}

/// A solution of `M D = rhs` inside the 𝔤-invariant part of Hom, if any.
fn equivariant_solution(lie: &LieRep, m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vector>> {
    let inv = equivariant_maps(lie);
    if inv.is_empty() {
        return Ok(is_zero_vector(rhs).then(|| vec![Scalar::zero(); m.cols()]));
    }
    let cols: Vec<Vector> = inv.iter().map(|v| m.mul_vec(v)).collect::<Result<_>>()?;
    let restricted = Matrix::from_columns(&cols, m.rows())?;
    Ok(restricted
        .solve_affine(rhs)?
        .particular
        .map(|c| combine(&c, &inv, m.cols())))
}

/// Parameter assignment by name.
pub type Params = BTreeMap<String, Scalar>;

pub fn check_operator(s: &StructureSpec, f: &DiffOpSpec, params: &Params) -> Result<OpCheck> {
    let algebra = Algebra::new(s.n, s.generators.clone())?;
    let values = f.instantiate(&s.generators, params)?;
    check_values(&algebra, &s.lie, values)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZReport {
    /// Z'_f ⊂ Hom(T*, Λ²T*); empty if no derivation extends f.
    #[serde(skip)]
    pub z_prime: AffineSpace,
    pub z_prime_dim: Option<usize>,
    pub z_dim: Option<usize>,
    pub codim_z: usize,
    pub z_doubleprime_dim: Option<usize>,
    /// Canonical representative of ξ_f modulo the image of 𝔤⊗T.
    pub xi_f: Option<HomElement>,
    pub xi_f_nonzero: Option<bool>,
    /// Whether 𝔤 maps the class of ξ_f to zero in the quotient.
    pub xi_f_invariant: Option<bool>,
}

/// `v` reduced modulo the span of `basis` (given in RREF), a canonical coset representative.
fn reduce_mod(v: &[Scalar], rref: &[Vector]) -> Vector {
    let mut out = v.to_vec();
    for row in rref {
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if out[p].is_zero() {
            continue;
        }
        let c = out[p].clone();
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o -= &(&c * x);
            }
        }
    }
    out
}

pub fn z_spaces_for_values(
    n: usize,
    lie: &LieRep,
    generators: &[Form],
    values: &[Form],
) -> Result<ZReport> {
    let m = extension_matrix(n, generators)?;
    let rhs = stacked_rhs(n, generators, values)?;
    let z = m.solve_affine(&rhs)?;
    let hd = hom_dim(n);
    let sym = n * n * (n + 1) / 2;
    let codim = hd - m.kernel().len();
    let Some(part) = z.particular.clone() else {
        return Ok(ZReport {
            z_prime_dim: None,
            z_dim: None,
            codim_z: codim,
            z_doubleprime_dim: None,
            xi_f: None,
            xi_f_nonzero: None,
            xi_f_invariant: None,
            z_prime: z,
        });
    };
    let gt = span_basis(&algebra_tensor_image(lie), hd);
    let mut joint = gt.clone();
    joint.extend(z.kernel_basis.iter().cloned());
    let zpp = rank_of_rows(&joint, hd) - gt.len();
    let (xi, nonzero, invariant) = if zpp == 0 {
        let rep = reduce_mod(&part, &gt);
        let invariant = lie.basis.iter().all(|x| {
            let moved = action_on_hom(x).mul_vec(&rep).expect("dim");
            is_zero_vector(&reduce_mod(&moved, &gt))
        });
        let nz = !is_zero_vector(&rep);
        (Some(HomElement::from_vector(n, &rep)), Some(nz), Some(invariant))
    } else {
        (None, None, None)
    };
    Ok(ZReport {
        z_prime_dim: Some(z.kernel_basis.len()),
        z_dim: Some(z.kernel_basis.len() + sym),
        codim_z: codim,
        z_doubleprime_dim: Some(zpp),
        xi_f: xi,
        xi_f_nonzero: nonzero,
        xi_f_invariant: invariant,
        z_prime: z,
    })
}

pub fn z_spaces(s: &StructureSpec, f: &DiffOpSpec, params: &Params) -> Result<ZReport> {
    let values = f.instantiate(&s.generators, params)?;
    z_spaces_for_values(s.n, &s.lie, &s.generator_forms(), &values)
}

/// Codimension of Z_0 in 𝔤𝔩(n)⊗T, i.e. the rank of the extension system.
pub fn codim_z0(n: usize, generators: &[Form]) -> Result<usize> {
    Ok(extension_matrix(n, generators)?.rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub strongly_admissible: bool,
    pub algebra_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub codim_z0: usize,
    /// dim T⊗𝔤^⊥ = n·(C(n,2) − dim 𝔤).
    pub torsion_dim: usize,
    pub z0_dim: usize,
    /// dim 𝔤⊗T + dim T⊗S²T.
    pub expected_z0_dim: usize,
    pub contains_algebra_tensor: bool,
    pub z_doubleprime_dim: usize,
}

/// Strong admissibility of the structure group: Z''_0 = 0, cross-checked against
/// `codim Z_0 = dim T⊗𝔤^⊥` and `Z_0 = (𝔤⊗T) ⊕ (T⊗S²T)`.
pub fn strong_admissibility(s: &StructureSpec) -> Result<AdmissibilityReport> {
    let n = s.n;
    let algebra = Algebra::new(n, s.generators.clone())?;
    let algebra_dims = algebra.dims();
    let invariant_dims: Vec<usize> = (0..=n).map(|p| invariants(&s.lie, p).len()).collect();
    if let Some(p) = (0..=n).find(|&p| algebra_dims[p] != invariant_dims[p]) {
        return Err(Error::IncompleteAlgebra { degree: p });
    }
    let gens = s.generator_forms();
    let m = extension_matrix(n, &gens)?;
    let zeros = vec![Form::zero(n); gens.len()];
    let z = z_spaces_for_values(n, &s.lie, &gens, &zeros)?;
    let gt = algebra_tensor_image(&s.lie);
    let contains = gt
        .iter()
        .all(|v| is_zero_vector(&m.mul_vec(v).expect("dim")));
    let sym = n * n * (n + 1) / 2;
    let torsion_dim = n * (binomial(n, 2) as usize - s.lie.dim());
    let z0_dim = z.z_dim.expect("0 is a solution");
    let expected = n * s.lie.dim() + sym;
    let zpp = z.z_doubleprime_dim.expect("nonempty");
    Ok(AdmissibilityReport {
        strongly_admissible: zpp == 0 && z.codim_z == torsion_dim && contains && z0_dim == expected,
        algebra_dims,
        invariant_dims,
        codim_z0: z.codim_z,
        torsion_dim,
        z0_dim,
        expected_z0_dim: expected,
        contains_algebra_tensor: contains,
        z_doubleprime_dim: zpp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_structure;
    use crate::rep::hom_from_images;

    fn params(l: i64, m: i64) -> Params {
        let mut p = Params::new();
        p.insert("lambda".into(), Scalar::from_int(l));
        p.insert("mu".into(), Scalar::from_int(m));
        p
    }

    #[test]
    fn structure_map_kernel_is_symmetric_part() {
        for n in 2..=4 {
            let cols: Vec<Vector> = (1..=n)
                .flat_map(|i| (1..=n).flat_map(move |j| (1..=n).map(move |k| (i, j, k))))
                .map(|(i, j, k)| gl_tensor_image(n, i, j, k))
                .collect();
            let m = Matrix::from_columns(&cols, hom_dim(n)).unwrap();
            assert_eq!(m.kernel().len(), n * n * (n + 1) / 2);
            assert_eq!(m.rank(), hom_dim(n));
        }
    }

    #[test]
    fn closure_of_su3_forms() {
        let s = get_structure("su-even", Some(3)).unwrap();
        let a = Algebra::new(6, s.generators.clone()).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 1, 2, 1, 0, 1]);
        // F³ and Ω⁺∧Ω⁻ are proportional, F∧Ω± = 0, ...
        assert!(!a.relations().is_empty());
    }

    #[test]
    fn nearly_kahler_witness_is_a_contraction() {
        let s = get_structure("su-even", Some(3)).unwrap();
        let nk = s.operator("nearly-kahler").unwrap();
        let (op, om) = (s.form("Omega+").unwrap(), s.form("Omega-").unwrap());
        for (l, m) in [(3, 0), (0, 3), (2, -5)] {
            let c = check_operator(&s, nk, &params(l, m)).unwrap();
            let w = c.equivariant_witness.unwrap();
            let psi = op
                .scale(&Scalar::frac(m, 3))
                .sub(&om.scale(&Scalar::frac(l, 3)))
                .unwrap();
            assert_eq!(w.images, contraction_derivation(&psi));
        }
        // The contraction with λΩ⁺ itself does not reproduce f(F) = λΩ⁺.
        let naive = contraction_derivation(&op.scale(&Scalar::from_int(3)));
        let f = s.form("F").unwrap();
        assert_ne!(derivation_apply(&naive, f), op.scale(&Scalar::from_int(3)));
    }

    #[test]
    fn zero_operator() {
        let s = get_structure("su-even", Some(2)).unwrap();
        let c = check_operator(&s, s.operator("zero").unwrap(), &Params::new()).unwrap();
        assert!(c.all_ok());
        assert!(c.extension_witness.unwrap().is_zero());
    }

    #[test]
    fn value_outside_algebra_is_reported() {
        let s = get_structure("su-even", Some(2)).unwrap();
        let a = Algebra::new(4, s.generators.clone()).unwrap();
        let mut vals = vec![Form::zero(4); 3];
        vals[0] = Form::parse(4, "e[1,2,3]").unwrap();
        assert!(matches!(
            check_values(&a, &s.lie, vals),
            Err(Error::NotInAlgebra { .. })
        ));
    }

    #[test]
    fn nearly_kahler_translate() {
        let s = get_structure("su-even", Some(3)).unwrap();
        let nk = s.operator("nearly-kahler").unwrap();
        let z0 = z_spaces(&s, s.operator("zero").unwrap(), &Params::new()).unwrap();
        let zf = z_spaces(&s, nk, &params(3, 0)).unwrap();
        assert_eq!(z0.z_dim, zf.z_dim);
        assert_eq!(zf.z_doubleprime_dim, Some(0));
        assert_eq!(zf.xi_f_nonzero, Some(true));
        assert_eq!(zf.xi_f_invariant, Some(true));
    }

    #[test]
    fn equivariant_witness_solves_system() {
        let s = get_structure("su-even", Some(3)).unwrap();
        let nk = s.operator("nearly-kahler").unwrap();
        let c = check_operator(&s, nk, &params(3, 0)).unwrap();
        assert!(c.all_ok(), "{:?}", c.failures);
        let w = c.equivariant_witness.unwrap();
        let v = hom_from_images(&w.images);
        for x in &s.lie.basis {
            assert!(is_zero_vector(&action_on_hom(x).mul_vec(&v).unwrap()));
        }
        let f = s.form("F").unwrap();
        assert_eq!(
            derivation_apply(&w.images, f),
            s.form("Omega+").unwrap().scale(&Scalar::from_int(3))
        );
    }
}
