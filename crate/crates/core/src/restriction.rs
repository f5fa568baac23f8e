//! Restriction to a coordinate subspace W ⊂ T: the map p: A → Λ*W*, the induced
//! operator f_W on p(A), and the checkable hypotheses of the embedding theorem.

use serde::Serialize;

use crate::cartan::{flag_masks, labels_mask, relatively_admissible};
use crate::catalog::{DiffOpSpec, StructureSpec};
use crate::dga::{extension_matrix, Algebra, Operator, Params};
use crate::error::{Error, Result};
use crate::exterior::{binomial, Form, MultiIndex, Subspace};
use crate::linalg::{rank_of_rows, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct NamedForm {
    pub name: String,
    pub form: Form,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedValue {
    pub source: String,
    pub form: Form,
    pub value: Form,
    /// `value` written in the products of the restricted generators.
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityDims {
    pub z_f_dim: usize,
    /// Image of the elements tangent to the submanifold, i.e. with `D(θ^l)|_W = 0` for `l ∉ W`.
    pub projection_dim: usize,
    /// Image of all of Z_f under the coordinate projection, for comparison.
    pub unconstrained_projection_dim: usize,
    pub z_fw_dim: Option<usize>,
}

impl SurjectivityDims {
    pub fn holds(&self) -> bool {
        self.z_fw_dim == Some(self.projection_dim)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub w_labels: Vec<usize>,
    pub p_image_gens: Vec<NamedForm>,
    pub p_image_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub kerp_condition: bool,
    /// `p(f(b)) = f_W(p(b))` on every basis element of A, with f_W defined on an echelon basis.
    pub diagram_commutes: bool,
    pub f_w: Option<Vec<InducedValue>>,
    pub extends_ok: bool,
    pub surjectivity_dims: Option<SurjectivityDims>,
    pub flag_position: Option<usize>,
    pub relatively_admissible: bool,
    pub hypotheses_ok: bool,
}

impl RestrictionReport {
    pub fn induced(&self, source: &str) -> Option<&InducedValue> {
        self.f_w.as_ref()?.iter().find(|v| v.source == source)
    }
}

/// Per-degree echelon data of p restricted to A_p.
struct DegreeRestriction {
    /// Indices into the A_p basis whose images form a basis of p(A)_p.
    echelon: Vec<usize>,
    images: Vec<Form>,
    kernel: Vec<Vector>,
}

fn restrict_degree(algebra: &Algebra, p: usize, w: &Subspace) -> Result<DegreeRestriction> {
    let k = w.dim();
    let size = binomial(k, p) as usize;
    let basis = algebra.pieces[p].basis_forms();
    let images: Vec<Form> = basis.iter().map(|b| b.restrict(w)).collect::<Result<_>>()?;
    let mut echelon = Vec::new();
    let mut rows: Vec<Vector> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        rows.push(img.flatten(p));
        if rank_of_rows(&rows, size) == echelon.len() + 1 {
            echelon.push(i);
        } else {
            rows.pop();
        }
    }
    let kernel = if basis.is_empty() {
        Vec::new()
    } else {
        let cols: Vec<Vector> = images.iter().map(|f| f.flatten(p)).collect();
        Matrix::from_columns(&cols, size)?.kernel()
    };
    Ok(DegreeRestriction {
        echelon,
        images,
        kernel,
    })
}

fn combination(coeffs: &[Scalar], forms: &[Form], dim: usize) -> Result<Form> {
    let mut out = Form::zero(dim);
    for (c, f) in coeffs.iter().zip(forms) {
        if !c.is_zero() {
            out = out.add(&f.scale(c))?;
        }
    }
    Ok(out)
}

/// Coefficients of `target` in the span of `forms` (degree `p`, ambient `dim`).
fn coordinates_in(forms: &[Form], target: &Form, p: usize, dim: usize) -> Result<Option<Vector>> {
    if forms.is_empty() {
        return Ok(target.is_zero().then(Vec::new));
    }
    let cols: Vec<Vector> = forms.iter().map(|f| f.flatten(p)).collect();
    let m = Matrix::from_columns(&cols, binomial(dim, p) as usize)?;
    Ok(m.solve_affine(&target.flatten(p))?.particular)
}

fn render_expression(algebra: &Algebra, value: &Form) -> Result<String> {
    if value.is_zero() {
        return Ok("0".into());
    }
    let Some((p, coords)) = algebra.coordinates(value)? else {
        return Ok(value.to_string());
    };
    let piece = &algebra.pieces[p];
    let parts: Vec<String> = coords
        .iter()
        .zip(&piece.basis)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, &i)| {
            let name = algebra.monomial_name(&piece.monomials[i]);
            if c.is_one() {
                name
            } else if c.is_rational() {
                format!("{c}*{name}")
            } else {
                format!("({c})*{name}")
            }
        })
        .collect();
    Ok(parts.join(" + "))
}

/// Column indices of the extension system `i·C(n,2) + rank{j,k}` whose triple `(i,j,k)`
/// does not lie entirely in the coordinate set `mask`.
fn columns_leaving(n: usize, mask: u32) -> Vec<usize> {
    let pairs = MultiIndex::all_of_degree(n, 2);
    let p2 = pairs.len();
    let mut out = Vec::new();
    for i in 0..n {
        for (r, pair) in pairs.iter().enumerate() {
            let bits = pair.bits() | (1 << i);
            if bits & !mask != 0 {
                out.push(i * p2 + r);
            }
        }
    }
    out
}

/// Dimension of the image of Z_0 ⊂ 𝔤𝔩(T)⊗T under the projection to 𝔤𝔩(W)⊗W.
///
/// With `A` the system on 𝔤𝔩(T)⊗T and `N` the coordinates leaving `W`,
/// `dim P(Z_0) = k³ − rank A + rank A_N`. Columns of `A` are columns of the system on
/// Hom (up to sign) or zero, so both ranks are read off the Hom system.
pub fn projected_dim(m: &Matrix, n: usize, mask: u32) -> usize {
    let k = mask.count_ones() as usize;
    let leaving = m.select_columns(&columns_leaving(n, mask));
    k * k * k + leaving.rank() - m.rank()
}

/// Dimension of the image of `Z_0 ∩ {a : a_{ljk} = a_{lkj} for l ∉ W; j, k ∈ W}` in 𝔤𝔩(W)⊗W.
///
/// Those are the integral elements tangent to a submanifold of type W: the tautological
/// forms `θ^l`, `l ∉ W`, vanish there, so `dθ^l = 0` forces the symmetry. On Hom the
/// condition reads `D(θ^l)|_W = 0`, and the symmetric part W⊗S²W projects onto itself.
pub fn tangent_projection_dim(m: &Matrix, n: usize, mask: u32) -> Result<usize> {
    let k = mask.count_ones() as usize;
    let pairs = MultiIndex::all_of_degree(n, 2);
    let p2 = pairs.len();
    let inside = |b: u32| b & !mask == 0;
    let mut rows = m.row_vectors();
    let mut keep = Vec::new();
    for l in 0..n {
        for (r, pair) in pairs.iter().enumerate() {
            if !inside(pair.bits()) {
                continue;
            }
            if inside(1 << l) {
                keep.push(l * p2 + r);
            } else {
                let mut row = vec![Scalar::zero(); m.cols()];
                row[l * p2 + r] = Scalar::one();
                rows.push(row);
            }
        }
    }
    let constrained = Matrix::from_rows(rows, m.cols())?;
    let projected: Vec<Vector> = constrained
        .kernel()
        .iter()
        .map(|v| keep.iter().map(|&c| v[c].clone()).collect())
        .collect();
    Ok(rank_of_rows(&projected, keep.len()) + k * k * (k + 1) / 2)
}

pub fn restrict_values(
    s: &StructureSpec,
    values: Vec<Form>,
    labels: &[usize],
) -> Result<RestrictionReport> {
    let n = s.n;
    let w = Subspace::coordinate(n, labels)?;
    let k = w.dim();
    let mask = labels_mask(labels);
    let algebra = Algebra::new(n, s.generators.clone())?;
    let op = Operator::new(&algebra, values)?;

    let mut p_image_dims = Vec::new();
    let mut kernel_dims = Vec::new();
    let mut kerp_condition = true;
    let mut diagram_commutes = true;
    for p in 0..=n {
        let piece = &algebra.pieces[p];
        let basis = piece.basis_forms();
        let data = restrict_degree(&algebra, p, &w)?;
        p_image_dims.push(data.echelon.len());
        kernel_dims.push(data.kernel.len());
        for kv in &data.kernel {
            let a = combination(kv, &basis, n)?;
            if !op.apply(&a)?.restrict(&w)?.is_zero() {
                kerp_condition = false;
            }
        }
        if p + 1 > k {
            continue;
        }
        // f_W on the echelon basis, then compared with p∘f on every basis element.
        let ech_images: Vec<Form> = data.echelon.iter().map(|&i| data.images[i].clone()).collect();
        let ech_values: Vec<Form> = data
            .echelon
            .iter()
            .map(|&i| op.apply(&basis[i])?.restrict(&w))
            .collect::<Result<_>>()?;
        for (b, img) in basis.iter().zip(&data.images) {
            let coords = coordinates_in(&ech_images, img, p, k)?.expect("image lies in the span");
            let fw = combination(&coords, &ech_values, k)?;
            if fw != op.apply(b)?.restrict(&w)? {
                diagram_commutes = false;
            }
        }
    }

    let mut p_image_gens = Vec::new();
    let mut p_values = Vec::new();
    for ((name, g), v) in s.generators.iter().zip(&op.values) {
        let img = g.restrict(&w)?;
        if !img.is_zero() {
            p_image_gens.push(NamedForm {
                name: format!("p({name})"),
                form: img,
            });
            p_values.push(v.restrict(&w)?);
        }
    }

    let f_w = if kerp_condition {
        let pa = Algebra::new(
            k,
            p_image_gens
                .iter()
                .map(|g| (g.name.clone(), g.form.clone()))
                .collect(),
        )?;
        let mut out = Vec::new();
        for (g, v) in p_image_gens.iter().zip(&p_values) {
            out.push(InducedValue {
                source: g.name.clone(),
                form: g.form.clone(),
                value: v.clone(),
                expression: render_expression(&pa, v)?,
            });
        }
        Some(out)
    } else {
        None
    };

    let gens = s.generator_forms();
    let m = extension_matrix(n, &gens)?;
    let mut rhs = Vec::new();
    for (g, v) in gens.iter().zip(&op.values) {
        rhs.extend(v.flatten(g.degree().unwrap_or(0) + 1));
    }
    let z = m.solve_affine(&rhs)?;
    let extends_ok = z.particular.is_some();
    let surjectivity_dims = if extends_ok && kerp_condition {
        let pg: Vec<Form> = p_image_gens.iter().map(|g| g.form.clone()).collect();
        let mw = extension_matrix(k, &pg)?;
        let mut rhs_w = Vec::new();
        for (g, v) in pg.iter().zip(&p_values) {
            rhs_w.extend(v.flatten(g.degree().unwrap_or(0) + 1));
        }
        let zw = mw.solve_affine(&rhs_w)?;
        Some(SurjectivityDims {
            z_f_dim: z.kernel_basis.len() + n * n * (n + 1) / 2,
            projection_dim: tangent_projection_dim(&m, n, mask)?,
            unconstrained_projection_dim: projected_dim(&m, n, mask),
            z_fw_dim: zw.dim().map(|d| d + k * k * (k + 1) / 2),
        })
    } else {
        None
    };

    let flag_position = flag_masks(&s.default_flag).iter().position(|&x| x == mask);
    let relatively_admissible = relatively_admissible(s, labels)?;
    Ok(RestrictionReport {
        w_labels: labels.to_vec(),
        p_image_gens,
        p_image_dims,
        kernel_dims,
        kerp_condition,
        diagram_commutes,
        f_w,
        extends_ok,
        surjectivity_dims,
        flag_position,
        relatively_admissible,
        hypotheses_ok: kerp_condition && extends_ok && relatively_admissible,
    })
}

pub fn restrict_structure(
    s: &StructureSpec,
    f: &DiffOpSpec,
    params: &Params,
    w: &Subspace,
) -> Result<RestrictionReport> {
    let labels = w.coordinate_labels().ok_or(Error::NonCoordinateSubspace)?;
    let values = f.instantiate(&s.generators, params)?;
    restrict_values(s, values, &labels)
}

/// Labels of the coordinate hyperplane `e_i^⊥`.
pub fn drop_label(n: usize, i: usize) -> Vec<usize> {
    (1..=n).filter(|&j| j != i).collect()
}

/// The scalar `c` with `value = c·target`, if any (`target` nonzero).
pub fn proportionality(value: &Form, target: &Form) -> Option<Scalar> {
    let (idx, t) = target.terms().next()?;
    let c = value.coefficient(idx).checked_div(t).ok()?;
    (target.scale(&c) == *value).then_some(c)
}

fn params_of(lambda: &Scalar, mu: &Scalar) -> Params {
    let mut p = Params::new();
    p.insert(crate::catalog::LAMBDA.into(), lambda.clone());
    p.insert(crate::catalog::MU.into(), mu.clone());
    p
}

/// Constants of the induced operator of the nearly-Kähler operator on `e_6^⊥`, in the
/// restricted 𝔰𝔲(2)-forms `α = e^5`, `(F', Ω'^±)` on the first four coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct NearlyHypoConstants {
    pub report: RestrictionReport,
    /// `c` with `f_W(F') = c·α∧Ω'^+`.
    pub f_of_f: Option<Scalar>,
    /// `c` with `f_W(α∧Ω'^-) = c·F'∧F'`.
    pub f_of_alpha_omega_minus: Option<Scalar>,
    pub images_match: bool,
}

pub fn nearly_hypo(lambda: &Scalar, mu: &Scalar) -> Result<NearlyHypoConstants> {
    let s = crate::catalog::get_structure("su-even", Some(3))?;
    let labels = drop_label(6, 6);
    let values = s
        .operator("nearly-kahler")?
        .instantiate(&s.generators, &params_of(lambda, mu))?;
    let report = restrict_values(&s, values, &labels)?;
    let (f, op, om) = crate::catalog::hermitian_forms(5, 2);
    let alpha = Form::basis(5, &[5])?;
    let a_op = alpha.wedge(&op)?;
    let a_om = alpha.wedge(&om)?;
    let get = |name: &str| report.induced(name).map(|v| (v.form.clone(), v.value.clone()));
    let images_match = get("p(F)").map(|x| x.0) == Some(f.clone())
        && get("p(Omega+)").map(|x| x.0) == Some(a_op.clone())
        && get("p(Omega-)").map(|x| x.0) == Some(a_om.clone());
    let f_of_f = get("p(F)").and_then(|(_, v)| proportionality(&v, &a_op));
    let f_of_alpha_omega_minus =
        get("p(Omega-)").and_then(|(_, v)| proportionality(&v, &f.wedge(&f).ok()?));
    Ok(NearlyHypoConstants {
        report,
        f_of_f,
        f_of_alpha_omega_minus,
        images_match,
    })
}

/// Operator B of 𝔰𝔲(n) ⊂ 𝔰𝔬(2n+1) restricted to `W = ⟨e_1..e_{2n−1}, e_{2n+1}⟩`, compared
/// with `B_W(α) = λF`, `B_W(Ω∧β) = −iμ α∧Ω∧β`, `B_W(F) = 0` in the forms of W
/// (`α = e^{2n}`, `β = e^{2n−1}` after relabelling, `F, Ω` on the first `2n−2` coordinates).
#[derive(Clone, Debug, Serialize)]
pub struct InducedOperatorCheck {
    pub report: RestrictionReport,
    pub checks: Vec<(String, bool)>,
}

impl InducedOperatorCheck {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

pub fn tangent_to_characteristic(n: usize, lambda: &Scalar, mu: &Scalar) -> Result<InducedOperatorCheck> {
    let s = crate::catalog::get_structure("su-odd", Some(n))?;
    let dim = 2 * n + 1;
    let labels = drop_label(dim, 2 * n);
    let values = s.operator("B")?.instantiate(&s.generators, &params_of(lambda, mu))?;
    let report = restrict_values(&s, values, &labels)?;
    let k = 2 * n;
    let (f, op, om) = crate::catalog::hermitian_forms(k, n - 1);
    let alpha = Form::basis(k, &[k])?;
    let beta = Form::basis(k, &[k - 1])?;
    let op_b = op.wedge(&beta)?;
    let om_b = om.wedge(&beta)?;
    let expected = [
        ("p(alpha)", alpha.clone(), f.scale(lambda)),
        ("p(F)", f.clone(), Form::zero(k)),
        ("p(Omega+)", op_b.clone(), alpha.wedge(&om_b)?.scale(mu)),
        ("p(Omega-)", om_b.clone(), alpha.wedge(&op_b)?.scale(&-mu)),
    ];
    let mut checks = vec![("kerp condition".to_string(), report.kerp_condition)];
    for (name, form, value) in expected {
        let got = report.induced(name);
        checks.push((format!("{name} = {form}"), got.map(|g| &g.form) == Some(&form)));
        checks.push((
            format!("f_W({name}) = {value}"),
            got.map(|g| &g.value) == Some(&value),
        ));
    }
    Ok(InducedOperatorCheck { report, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_structure;

    #[test]
    fn hypo_restriction() {
        let s = get_structure("su-even", Some(3)).unwrap();
        let w = Subspace::coordinate(6, &drop_label(6, 6)).unwrap();
        let r = restrict_structure(&s, s.operator("zero").unwrap(), &Params::new(), &w).unwrap();
        assert!(r.kerp_condition && r.diagram_commutes);
        assert_eq!(r.p_image_gens.len(), 3);
        assert!(r.f_w.unwrap().iter().all(|v| v.value.is_zero()));
        let sd = r.surjectivity_dims.unwrap();
        assert!(sd.holds(), "{sd:?}");
        assert_eq!(r.flag_position, Some(5));
        assert!(r.hypotheses_ok);
    }

    #[test]
    fn projection_dim_matches_explicit_kernel() {
        // Build Z_0 ⊂ 𝔤𝔩(T)⊗T explicitly and project it.
        let s = get_structure("su-even", Some(2)).unwrap();
        let n = 4;
        let m = extension_matrix(n, &s.generator_forms()).unwrap();
        let pairs = MultiIndex::all_of_degree(n, 2);
        let mut cols = Vec::new();
        let mut coords = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for kk in 0..n {
                    let mut c = vec![Scalar::zero(); m.rows()];
                    if j != kk {
                        // ω_{ij} = θ^k ↦ D(θ^i) = θ^k ∧ θ^j.
                        let (idx, neg) = MultiIndex::from_labels(&[kk + 1, j + 1]).unwrap();
                        let r = pairs.iter().position(|p| *p == idx).unwrap();
                        c = m.column(i * pairs.len() + r);
                        if neg {
                            c = c.into_iter().map(|x| -x).collect();
                        }
                    }
                    cols.push(c);
                    coords.push((i, j, kk));
                }
            }
        }
        let a = Matrix::from_columns(&cols, m.rows()).unwrap();
        let z0 = a.kernel();
        let mask = labels_mask(&[1, 2, 4]);
        let keep: Vec<usize> = coords
            .iter()
            .enumerate()
            .filter(|(_, (i, j, k))| [i, j, k].iter().all(|&&l| mask & (1 << l) != 0))
            .map(|(c, _)| c)
            .collect();
        let projected: Vec<Vector> = z0
            .iter()
            .map(|v| keep.iter().map(|&c| v[c].clone()).collect())
            .collect();
        assert_eq!(rank_of_rows(&projected, keep.len()), projected_dim(&m, n, mask));
    }
}
