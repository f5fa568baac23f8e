//! Built-in structures: Lie algebras, generating invariant forms, default flags
//! and named differential operators.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Form, MultiIndex};
use crate::linalg::Matrix;
use crate::rep::{act_on_form, stabilizer, LieRep};
use crate::scalar::Scalar;

/// Parameter names accepted by operators.
pub const LAMBDA: &str = "lambda";
pub const MU: &str = "mu";

/// A form whose coefficients are affine in the operator parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub constant: Form,
    pub linear: Vec<(String, Form)>,
}

impl AffineForm {
    pub fn constant(f: Form) -> Self {
        AffineForm {
            constant: f,
            linear: Vec::new(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(Form::zero(dim))
    }

    pub fn with(mut self, param: &str, f: Form) -> Self {
        self.linear.push((param.to_string(), f));
        self
    }

    pub fn eval(&self, params: &BTreeMap<String, Scalar>) -> Result<Form> {
        let mut out = self.constant.clone();
        for (p, f) in &self.linear {
            let v = params
                .get(p)
                .ok_or_else(|| Error::MissingParameter(p.clone()))?;
            out = out.add(&f.scale(v))?;
        }
        Ok(out)
    }
}

/// A differential operator given by its values on the generators.
#[derive(Clone, Debug, Serialize)]
pub struct DiffOpSpec {
    pub name: String,
    pub params: Vec<String>,
    pub values: BTreeMap<String, AffineForm>,
}

impl DiffOpSpec {
    pub fn zero(name: &str) -> Self {
        DiffOpSpec {
            name: name.to_string(),
            params: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    /// Concrete values on each generator (zero where unspecified).
    pub fn instantiate(
        &self,
        generators: &[(String, Form)],
        params: &BTreeMap<String, Scalar>,
    ) -> Result<Vec<Form>> {
        for p in &self.params {
            if !params.contains_key(p) {
                return Err(Error::MissingParameter(p.clone()));
            }
        }
        generators
            .iter()
            .map(|(name, g)| match self.values.get(name) {
                Some(v) => v.eval(params),
                None => Ok(Form::zero(g.dim())),
            })
            .collect()
    }
}

/// Full flag of coordinate subspaces: `W_k` is spanned by the first `k` inserted basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagSpec {
    pub insertion_order: Vec<usize>,
}

impl FlagSpec {
    pub fn new(n: usize, insertion_order: Vec<usize>) -> Result<Self> {
        let mut sorted = insertion_order.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::InvalidFlag(format!(
                "{insertion_order:?} is not a permutation of 1..{n}"
            )));
        }
        Ok(FlagSpec { insertion_order })
    }

    pub fn standard(n: usize) -> Self {
        FlagSpec {
            insertion_order: (1..=n).collect(),
        }
    }
}

/// How the Lie algebra of a structure was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LieSource {
    Explicit,
    /// Skew stabilizer of the named generators.
    StabilizerOf(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct StructureSpec {
    pub name: String,
    pub n: usize,
    pub lie: LieRep,
    pub lie_source: LieSource,
    pub generators: Vec<(String, Form)>,
    pub default_flag: FlagSpec,
    pub operators: BTreeMap<String, DiffOpSpec>,
    /// Additional named forms (Hodge duals, variants) available to stability checks.
    pub extra_forms: Vec<(String, Form)>,
}

impl StructureSpec {
    pub fn generator_forms(&self) -> Vec<Form> {
        self.generators.iter().map(|g| g.1.clone()).collect()
    }

    pub fn operator(&self, name: &str) -> Result<&DiffOpSpec> {
        self.operators
            .get(name)
            .ok_or_else(|| Error::UnknownOperator(name.to_string()))
    }

    /// Generator or extra form by name.
    pub fn form(&self, name: &str) -> Result<&Form> {
        self.generators
            .iter()
            .chain(&self.extra_forms)
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::UnknownForm(name.to_string()))
    }

    pub fn form_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .chain(&self.extra_forms)
            .map(|(n, _)| n.clone())
            .collect()
    }

    fn verify_invariance(&self) -> Result<()> {
        for (name, g) in &self.generators {
            for x in &self.lie.basis {
                if !act_on_form(x, g)?.is_zero() {
                    return Err(Error::NotInvariant {
                        form: name.clone(),
                        algebra: self.lie.name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn export(&self) -> StructureExport {
        StructureExport {
            name: self.name.clone(),
            n: self.n,
            lie_algebra: LieExport {
                source: self.lie_source.clone(),
                dim: self.lie.dim(),
                basis: self
                    .lie
                    .basis
                    .iter()
                    .map(|m| {
                        (0..m.rows())
                            .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                            .collect()
                    })
                    .collect(),
            },
            generators: self.generators.iter().map(|(n, f)| (n.clone(), f.to_string())).collect(),
            extra_forms: self
                .extra_forms
                .iter()
                .map(|(n, f)| (n.clone(), f.to_string()))
                .collect(),
            default_flag: self.default_flag.clone(),
            operators: self.operators.clone(),
        }
    }
}

/// JSON-friendly view of a [`StructureSpec`]; forms use the literal syntax.
#[derive(Clone, Debug, Serialize)]
pub struct StructureExport {
    pub name: String,
    pub n: usize,
    pub lie_algebra: LieExport,
    pub generators: Vec<(String, String)>,
    pub extra_forms: Vec<(String, String)>,
    pub default_flag: FlagSpec,
    pub operators: BTreeMap<String, DiffOpSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieExport {
    pub source: LieSource,
    pub dim: usize,
    pub basis: Vec<Vec<Vec<String>>>,
}

/// Names accepted by [`get_structure`].
pub const STRUCTURE_NAMES: &[&str] = &[
    "su-even",
    "su-odd",
    "psu3",
    "psu3-dual",
    "so3-9",
    "g2",
    "spin7",
    "sp2sp1",
    "example-712",
    "trivial",
];

/// Parses `name` or `name:n`.
pub fn parse_structure_name(s: &str) -> Result<(String, Option<usize>)> {
    match s.split_once(':') {
        Some((name, n)) => {
            let n = n
                .parse()
                .map_err(|_| Error::UnknownStructure(s.to_string()))?;
            Ok((name.to_string(), Some(n)))
        }
        None => Ok((s.to_string(), None)),
    }
}

pub fn get_structure_by_label(label: &str) -> Result<StructureSpec> {
    let (name, n) = parse_structure_name(label)?;
    get_structure(&name, n)
}

/// Options for catalog construction.
#[derive(Clone, Copy, Debug, Default)]
pub struct CatalogOptions {
    /// Use the three-form ρ exactly as printed rather than the validated one.
    pub rho_as_printed: bool,
}

pub fn get_structure(name: &str, n: Option<usize>) -> Result<StructureSpec> {
    get_structure_with(name, n, CatalogOptions::default())
}

pub fn get_structure_with(
    name: &str,
    n: Option<usize>,
    opts: CatalogOptions,
) -> Result<StructureSpec> {
    let need_n = |lo: usize, hi: usize| -> Result<usize> {
        match n {
            Some(k) if (lo..=hi).contains(&k) => Ok(k),
            Some(k) => Err(Error::UnsupportedDimension {
                name: name.to_string(),
                n: k,
            }),
            None => Err(Error::UnsupportedDimension {
                name: name.to_string(),
                n: 0,
            }),
        }
    };
    let no_n = || -> Result<()> {
        match n {
            None => Ok(()),
            Some(k) => Err(Error::UnsupportedDimension {
                name: name.to_string(),
                n: k,
            }),
        }
    };
    let spec = match name {
        "su-even" => su_even(need_n(2, 4)?)?,
        "su-odd" => su_odd(need_n(2, 4)?)?,
        "psu3" => {
            no_n()?;
            psu3(false, opts)?
        }
        "psu3-dual" => {
            no_n()?;
            psu3(true, opts)?
        }
        "so3-9" => {
            no_n()?;
            so3_9()?
        }
        "g2" => {
            no_n()?;
            let phi = g2_form();
            from_stabilizer("g2", 7, vec![("phi".into(), phi)], vec![])?
        }
        "spin7" => {
            no_n()?;
            from_stabilizer("spin7", 8, vec![("Phi".into(), cayley_form())], vec![])?
        }
        "sp2sp1" => {
            no_n()?;
            from_stabilizer(
                "sp2sp1",
                8,
                vec![("Omega".into(), quaternionic_form())],
                vec![],
            )?
        }
        "example-712" => {
            no_n()?;
            let sigma = Form::parse(7, "e[1,2] + e[3,4]")?;
            from_stabilizer("example-712", 7, vec![("sigma".into(), sigma)], vec![])?
        }
        "trivial" => trivial(need_n(1, 6)?)?,
        _ => return Err(Error::UnknownStructure(name.to_string())),
    };
    spec.verify_invariance()?;
    Ok(spec)
}

fn label(name: &str, n: usize) -> String {
    format!("{name}:{n}")
}

fn from_stabilizer(
    name: &str,
    n: usize,
    generators: Vec<(String, Form)>,
    extra_forms: Vec<(String, Form)>,
) -> Result<StructureSpec> {
    let forms: Vec<Form> = generators.iter().map(|g| g.1.clone()).collect();
    let basis = stabilizer(&forms, true)?;
    let lie = LieRep::new(name, n, basis)?;
    let mut operators = BTreeMap::new();
    operators.insert("zero".to_string(), DiffOpSpec::zero("zero"));
    let extra = if extra_forms.is_empty() {
        generators
            .iter()
            .map(|(gname, f)| Ok((format!("*{gname}"), f.hodge_star()?)))
            .collect::<Result<Vec<_>>>()?
    } else {
        extra_forms
    };
    Ok(StructureSpec {
        name: name.to_string(),
        n,
        lie,
        lie_source: LieSource::StabilizerOf(generators.iter().map(|g| g.0.clone()).collect()),
        generators,
        default_flag: FlagSpec::standard(n),
        operators,
        extra_forms: extra,
    })
}

/// `F = Σ e^{2k−1,2k}` and `Ω⁺ + iΩ⁻ = Π (e^{2k−1} + i e^{2k})` for `k = 1..m` on ℝ^dim.
pub fn hermitian_forms(dim: usize, m: usize) -> (Form, Form, Form) {
    let mut f = Form::zero(dim);
    let mut re = Form::constant(dim, Scalar::one());
    let mut im = Form::zero(dim);
    for k in 1..=m {
        let a = Form::basis(dim, &[2 * k - 1]).expect("label");
        let b = Form::basis(dim, &[2 * k]).expect("label");
        f = f.add(&a.wedge(&b).expect("dim")).expect("dim");
        // (re + i im)(a + i b) = (re a − im b) + i(re b + im a)
        let nre = re
            .wedge(&a)
            .and_then(|x| x.sub(&im.wedge(&b)?))
            .expect("dim");
        let nim = re
            .wedge(&b)
            .and_then(|x| x.add(&im.wedge(&a)?))
            .expect("dim");
        re = nre;
        im = nim;
    }
    (f, re, im)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn su_even(m: usize) -> Result<StructureSpec> {
    let n = 2 * m;
    let (f, op, om) = hermitian_forms(n, m);
    let generators = vec![
        ("F".to_string(), f.clone()),
        ("Omega+".to_string(), op.clone()),
        ("Omega-".to_string(), om.clone()),
    ];
    let basis = stabilizer(&[f.clone(), op.clone(), om.clone()], true)?;
    let lie = LieRep::new(format!("su({m})"), n, basis)?;
    let mut operators = BTreeMap::new();
    operators.insert("zero".to_string(), DiffOpSpec::zero("zero"));
    if m == 3 {
        let f2 = f.wedge(&f)?;
        let mut values = BTreeMap::new();
        values.insert(
            "F".into(),
            AffineForm::zero(n).with(LAMBDA, op.clone()).with(MU, om.clone()),
        );
        values.insert(
            "Omega+".into(),
            AffineForm::zero(n).with(MU, f2.scale(&q(2, 3))),
        );
        values.insert(
            "Omega-".into(),
            AffineForm::zero(n).with(LAMBDA, f2.scale(&q(-2, 3))),
        );
        operators.insert(
            "nearly-kahler".into(),
            DiffOpSpec {
                name: "nearly-kahler".into(),
                params: vec![LAMBDA.into(), MU.into()],
                values,
            },
        );
    }
    let mut order: Vec<usize> = (1..=m).map(|k| 2 * k - 1).collect();
    order.extend((1..=m).map(|k| 2 * k));
    Ok(StructureSpec {
        name: label("su-even", m),
        n,
        lie,
        lie_source: LieSource::StabilizerOf(vec!["F".into(), "Omega+".into(), "Omega-".into()]),
        generators,
        default_flag: FlagSpec::new(n, order)?,
        operators,
        extra_forms: vec![],
    })
}

fn su_odd(m: usize) -> Result<StructureSpec> {
    let n = 2 * m + 1;
    let (f, op, om) = hermitian_forms(n, m);
    let alpha = Form::basis(n, &[n])?;
    let generators = vec![
        ("alpha".to_string(), alpha.clone()),
        ("F".to_string(), f.clone()),
        ("Omega+".to_string(), op.clone()),
        ("Omega-".to_string(), om.clone()),
    ];
    let basis = stabilizer(&[alpha.clone(), f.clone(), op.clone(), om.clone()], true)?;
    let lie = LieRep::new(format!("su({m})"), n, basis)?;
    let mi = Scalar::from_int(m as i64);
    let af = alpha.wedge(&f)?;
    let aop = alpha.wedge(&op)?;
    let aom = alpha.wedge(&om)?;

    let mut operators = BTreeMap::new();
    operators.insert("zero".to_string(), DiffOpSpec::zero("zero"));

    // (A): f(α)=0, f(F)=2λ α∧F, f(Ω)=n(λ−μi) α∧Ω.
    let mut a = BTreeMap::new();
    a.insert("F".into(), AffineForm::zero(n).with(LAMBDA, af.scale(&Scalar::from_int(2))));
    a.insert(
        "Omega+".into(),
        AffineForm::zero(n)
            .with(LAMBDA, aop.scale(&mi))
            .with(MU, aom.scale(&mi)),
    );
    a.insert(
        "Omega-".into(),
        AffineForm::zero(n)
            .with(LAMBDA, aom.scale(&mi))
            .with(MU, aop.scale(&-&mi)),
    );
    operators.insert(
        "A".into(),
        DiffOpSpec {
            name: "A".into(),
            params: vec![LAMBDA.into(), MU.into()],
            values: a,
        },
    );

    // (B): f(α)=λF, f(F)=0, f(Ω)=−μi α∧Ω.
    let mut b = BTreeMap::new();
    b.insert("alpha".into(), AffineForm::zero(n).with(LAMBDA, f.clone()));
    b.insert("Omega+".into(), AffineForm::zero(n).with(MU, aom.clone()));
    b.insert("Omega-".into(), AffineForm::zero(n).with(MU, aop.neg()));
    operators.insert(
        "B".into(),
        DiffOpSpec {
            name: "B".into(),
            params: vec![LAMBDA.into(), MU.into()],
            values: b,
        },
    );

    if m == 3 {
        // (D): f(α)=0, f(F)=3λΩ⁻ − 3μΩ⁺, f(Ω)=2(λ+iμ)F².
        let f2 = f.wedge(&f)?;
        let mut d = BTreeMap::new();
        d.insert(
            "F".into(),
            AffineForm::zero(n)
                .with(LAMBDA, om.scale(&Scalar::from_int(3)))
                .with(MU, op.scale(&Scalar::from_int(-3))),
        );
        d.insert(
            "Omega+".into(),
            AffineForm::zero(n).with(LAMBDA, f2.scale(&Scalar::from_int(2))),
        );
        d.insert(
            "Omega-".into(),
            AffineForm::zero(n).with(MU, f2.scale(&Scalar::from_int(2))),
        );
        operators.insert(
            "D".into(),
            DiffOpSpec {
                name: "D".into(),
                params: vec![LAMBDA.into(), MU.into()],
                values: d,
            },
        );
    }

    let mut order: Vec<usize> = (1..=m).map(|k| 2 * k - 1).collect();
    order.extend((1..m).map(|k| 2 * k));
    order.push(2 * m + 1);
    order.push(2 * m);
    Ok(StructureSpec {
        name: label("su-odd", m),
        n,
        lie,
        lie_source: LieSource::StabilizerOf(vec![
            "alpha".into(),
            "F".into(),
            "Omega+".into(),
            "Omega-".into(),
        ]),
        generators,
        default_flag: FlagSpec::new(n, order)?,
        operators,
        extra_forms: vec![],
    })
}

fn trivial(n: usize) -> Result<StructureSpec> {
    let generators = (1..=n)
        .map(|i| Ok((format!("e{i}"), Form::basis(n, &[i])?)))
        .collect::<Result<Vec<_>>>()?;
    let mut operators = BTreeMap::new();
    operators.insert("zero".to_string(), DiffOpSpec::zero("zero"));
    Ok(StructureSpec {
        name: label("trivial", n),
        n,
        lie: LieRep::trivial(n),
        lie_source: LieSource::Explicit,
        generators,
        default_flag: FlagSpec::standard(n),
        operators,
        extra_forms: vec![],
    })
}

/// The associative 3-form `e^{123}+e^{145}+e^{167}+e^{246}−e^{257}−e^{347}−e^{356}`.
pub fn g2_form() -> Form {
    Form::parse(
        7,
        "e[1,2,3] + e[1,4,5] + e[1,6,7] + e[2,4,6] - e[2,5,7] - e[3,4,7] - e[3,5,6]",
    )
    .expect("literal")
}

/// Cayley form `e^1 ∧ φ + *φ` with φ the associative form on `e^2..e^8`.
pub fn cayley_form() -> Form {
    let phi = g2_form();
    let psi = phi.hodge_star().expect("homogeneous");
    let phi8 = phi.shift_labels(8, 1).expect("fits");
    let psi8 = psi.shift_labels(8, 1).expect("fits");
    let e1 = Form::basis(8, &[1]).expect("label");
    e1.wedge(&phi8).and_then(|x| x.add(&psi8)).expect("dim")
}

/// `Σ_a ω_a ∧ ω_a` for the hyperkähler triple on ℝ⁸ = ℍ².
pub fn quaternionic_form() -> Form {
    let block = |s: &str| -> Form {
        let f = Form::parse(4, s).expect("literal");
        f.shift_labels(8, 0)
            .and_then(|a| a.add(&f.shift_labels(8, 4)?))
            .expect("fits")
    };
    ["e[1,2] + e[3,4]", "e[1,3] - e[2,4]", "e[1,4] + e[2,3]"]
        .iter()
        .map(|s| {
            let w = block(s);
            w.wedge(&w).expect("dim")
        })
        .fold(Form::zero(8), |acc, x| acc.add(&x).expect("dim"))
}

/// The three-form ρ on ℝ⁸ exactly as printed (with two `e^1 ∧` groups).
pub fn rho_as_printed() -> Form {
    Form::parse(
        8,
        "e[1,2,3] + 1/2*e[1]*(e[4,7] - e[5,6]) + 1/2*e[1]*(e[4,6] + e[5,7]) \
         + 1/2*e[3]*(e[4,5] - e[6,7]) + r3/2*e[8]*(e[4,5] + e[6,7])",
    )
    .expect("literal")
}

/// `B([X,Y],Z)` for a bracket table `c[a][b][d]` (`[X_a,X_b] = Σ_d c_abd X_d`) and a
/// symmetric bilinear form `B`.
pub fn cartan_three_form(
    structure_constants: &[Vec<Vec<Scalar>>],
    inner_product: &Matrix,
) -> Result<Form> {
    let m = structure_constants.len();
    if inner_product.rows() != m || inner_product.cols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: inner_product.rows(),
        });
    }
    for a in 0..m {
        for b in 0..m {
            for d in 0..m {
                if structure_constants[a][b][d] != -&structure_constants[b][a][d] {
                    return Err(Error::NotAntisymmetric(a + 1, b + 1));
                }
            }
            if inner_product.get(a, b) != inner_product.get(b, a) {
                return Err(Error::Invalid("inner product is not symmetric".into()));
            }
        }
    }
    if inner_product.rank() != m {
        return Err(Error::Invalid("inner product is degenerate".into()));
    }
    let mut out = Form::zero(m);
    for idx in MultiIndex::all_of_degree(m, 3) {
        let l = idx.labels();
        let (a, b, c) = (l[0] - 1, l[1] - 1, l[2] - 1);
        let mut s = Scalar::zero();
        for d in 0..m {
            let k = &structure_constants[a][b][d];
            if !k.is_zero() {
                s += &(k * inner_product.get(d, c));
            }
        }
        out.add_term(idx, s);
    }
    Ok(out)
}

/// Complex 3×3 matrices with entries `(re, im)` over the scalar field.
type C3 = [[(Scalar, Scalar); 3]; 3];

fn c3_zero() -> C3 {
    std::array::from_fn(|_| std::array::from_fn(|_| (Scalar::zero(), Scalar::zero())))
}

fn c3_mul(a: &C3, b: &C3) -> C3 {
    let mut out = c3_zero();
    for i in 0..3 {
        for j in 0..3 {
            let (mut re, mut im) = (Scalar::zero(), Scalar::zero());
            for k in 0..3 {
                let (ar, ai) = &a[i][k];
                let (br, bi) = &b[k][j];
                re += &(ar * br - ai * bi);
                im += &(ar * bi + ai * br);
            }
            out[i][j] = (re, im);
        }
    }
    out
}

fn c3_sub(a: &C3, b: &C3) -> C3 {
    let mut out = c3_zero();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (&a[i][j].0 - &b[i][j].0, &a[i][j].1 - &b[i][j].1);
        }
    }
    out
}

fn c3_trace(a: &C3) -> (Scalar, Scalar) {
    let mut re = Scalar::zero();
    let mut im = Scalar::zero();
    for (i, row) in a.iter().enumerate() {
        re += &row[i].0;
        im += &row[i].1;
    }
    (re, im)
}

/// Anti-hermitian basis `T_a = −(i/2) λ_a` of 𝔰𝔲(3) built from the Gell-Mann matrices.
fn su3_basis() -> Vec<C3> {
    let r3 = Scalar::sqrt(3).expect("field");
    let mut lambdas: Vec<C3> = Vec::new();
    let real = |entries: &[(usize, usize, Scalar)]| -> C3 {
        let mut m = c3_zero();
        for (i, j, x) in entries {
            m[*i][*j].0 = x.clone();
        }
        m
    };
    let imag = |entries: &[(usize, usize, Scalar)]| -> C3 {
        let mut m = c3_zero();
        for (i, j, x) in entries {
            m[*i][*j].1 = x.clone();
        }
        m
    };
    let one = Scalar::one;
    lambdas.push(real(&[(0, 1, one()), (1, 0, one())]));
    lambdas.push(imag(&[(0, 1, -one()), (1, 0, one())]));
    lambdas.push(real(&[(0, 0, one()), (1, 1, -one())]));
    lambdas.push(real(&[(0, 2, one()), (2, 0, one())]));
    lambdas.push(imag(&[(0, 2, -one()), (2, 0, one())]));
    lambdas.push(real(&[(1, 2, one()), (2, 1, one())]));
    lambdas.push(imag(&[(1, 2, -one()), (2, 1, one())]));
    let s = r3.inverse().expect("nonzero");
    lambdas.push(real(&[
        (0, 0, s.clone()),
        (1, 1, s.clone()),
        (2, 2, s.scale(&crate::rational::Rational::from_int(-2))),
    ]));
    // −(i/2)(re + i im) = im/2 − (i/2) re
    let half = Scalar::frac(1, 2);
    lambdas
        .into_iter()
        .map(|l| {
            let mut t = c3_zero();
            for i in 0..3 {
                for j in 0..3 {
                    t[i][j] = (&l[i][j].1 * &half, -(&l[i][j].0 * &half));
                }
            }
            t
        })
        .collect()
}

/// Structure constants of 𝔰𝔲(3) in the basis `T_a`, and the Killing form `B = 6 tr(XY)`.
pub fn su3_structure() -> (Vec<Vec<Vec<Scalar>>>, Matrix) {
    let t = su3_basis();
    let m = t.len();
    // tr(T_c T_d) = −δ_cd / 2, hence c_abd = −2 tr([T_a, T_b] T_d).
    let mut c = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            let br = c3_sub(&c3_mul(&t[a], &t[b]), &c3_mul(&t[b], &t[a]));
            for d in 0..m {
                let (re, im) = c3_trace(&c3_mul(&br, &t[d]));
                debug_assert!(im.is_zero());
                c[a][b][d] = re.scale(&crate::rational::Rational::from_int(-2));
            }
        }
    }
    let mut killing = Matrix::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            let (re, _) = c3_trace(&c3_mul(&t[a], &t[b]));
            killing.set(a, b, re.scale(&crate::rational::Rational::from_int(6)));
        }
    }
    (c, killing)
}

/// The three-form `B([X,Y],Z)` of 𝔰𝔲(3), normalised so that the `e^{123}` coefficient is 1.
pub fn rho_from_killing_form() -> Form {
    let (c, b) = su3_structure();
    let raw = cartan_three_form(&c, &b).expect("valid table");
    let lead = raw.coefficient(MultiIndex::from_labels(&[1, 2, 3]).expect("distinct").0);
    raw.scale(&lead.inverse().expect("nonzero"))
}

/// Outcome of validating the printed ρ against the Killing-form construction.
#[derive(Clone, Debug, Serialize)]
pub struct RhoValidation {
    pub printed_stabilizer_dim: usize,
    pub oracle_stabilizer_dim: usize,
    pub printed_is_valid: bool,
    /// Monomials on which the printed and oracle forms differ.
    pub differing_monomials: Vec<String>,
}

pub fn validate_printed_rho() -> Result<RhoValidation> {
    let printed = rho_as_printed();
    let oracle = rho_from_killing_form();
    let ps = stabilizer(std::slice::from_ref(&printed), false)?.len();
    let os = stabilizer(std::slice::from_ref(&oracle), false)?.len();
    let diff = printed.sub(&oracle)?;
    Ok(RhoValidation {
        printed_stabilizer_dim: ps,
        oracle_stabilizer_dim: os,
        printed_is_valid: ps == 8,
        differing_monomials: diff.terms().map(|(m, _)| format!("{m:?}")).collect(),
    })
}

/// ρ used by the catalog: the printed form if it passes the stabilizer test, else the
/// Killing-form construction.
pub fn rho(opts: CatalogOptions) -> Result<Form> {
    if opts.rho_as_printed || validate_printed_rho()?.printed_is_valid {
        Ok(rho_as_printed())
    } else {
        Ok(rho_from_killing_form())
    }
}

fn psu3(dual: bool, opts: CatalogOptions) -> Result<StructureSpec> {
    let r = rho(opts)?;
    let sr = r.hodge_star()?;
    let (gen_name, gen, other_name, other) = if dual {
        ("*rho", sr, "rho", r)
    } else {
        ("rho", r, "*rho", sr)
    };
    let extras = vec![
        (other_name.to_string(), other),
        ("rho-as-printed".to_string(), rho_as_printed()),
    ];
    let basis = stabilizer(std::slice::from_ref(&gen), true)?;
    let name = if dual { "psu3-dual" } else { "psu3" };
    let lie = LieRep::new(name, 8, basis)?;
    let mut operators = BTreeMap::new();
    operators.insert("zero".to_string(), DiffOpSpec::zero("zero"));
    Ok(StructureSpec {
        name: name.to_string(),
        n: 8,
        lie,
        lie_source: LieSource::StabilizerOf(vec![gen_name.to_string()]),
        generators: vec![(gen_name.to_string(), gen)],
        default_flag: FlagSpec::standard(8),
        operators,
        extra_forms: extras,
    })
}

/// The three 9×9 matrices `H`, `X`, `Y` of the irreducible action of 𝔰𝔬(3) on ℝ⁹.
pub fn so3_9_matrices() -> (Matrix, Matrix, Matrix) {
    let build = |upper: &[(usize, usize, &str)]| -> Matrix {
        let mut m = Matrix::zeros(9, 9);
        for (i, j, s) in upper {
            let x: Scalar = s.parse().expect("literal");
            m.set(i - 1, j - 1, x.clone());
            m.set(j - 1, i - 1, -x);
        }
        m
    };
    let h = build(&[(1, 5, "-4*r2"), (2, 6, "-3*r2"), (3, 7, "-2*r2"), (4, 8, "-r2")]);
    let x = build(&[
        (1, 2, "2"),
        (2, 3, "r7"),
        (3, 4, "3"),
        (4, 9, "2*r5"),
        (5, 6, "2"),
        (6, 7, "r7"),
        (7, 8, "3"),
    ]);
    let y = build(&[
        (1, 6, "-2"),
        (2, 5, "-2"),
        (2, 7, "-r7"),
        (3, 6, "-r7"),
        (3, 8, "-3"),
        (4, 7, "-3"),
        (8, 9, "2*r5"),
    ]);
    (h, x, y)
}

/// Whether `[H,X]=√2Y`, `[H,Y]=−√2X`, `[X,Y]=√2H` hold exactly.
pub fn so3_9_brackets_hold() -> Result<[bool; 3]> {
    let (h, x, y) = so3_9_matrices();
    let r2 = Scalar::sqrt(2)?;
    Ok([
        h.bracket(&x)? == y.scale(&r2),
        h.bracket(&y)? == x.scale(&-&r2),
        x.bracket(&y)? == h.scale(&r2),
    ])
}

/// The invariant 4-form γ on ℝ⁹ as printed.
pub fn so3_gamma() -> Form {
    Form::parse(
        9,
        "1/4*r5*(-e[2,5,8,9] + e[1,2,4,9] - e[1,6,8,9] + e[4,5,6,9]) \
         - (e[1,3,5,7] + e[1,2,5,6]) \
         + 7/8*e[3,4,7,8] \
         + 1/8*r35*(-e[3,6,8,9] - e[2,7,8,9] + e[4,6,7,9] + e[2,3,4,9]) \
         - 1/2*e[1,4,5,8] \
         + 1/8*e[2,3,6,7] \
         + 3/8*(e[3,4,5,6] + e[5,6,7,8] - e[2,4,6,8] - e[2,4,5,7] - e[2,3,5,8] \
                - e[1,4,6,7] - e[1,3,6,8] + e[1,2,7,8] + e[1,2,3,4])",
    )
    .expect("literal")
}

fn so3_9() -> Result<StructureSpec> {
    let brackets = so3_9_brackets_hold()?;
    if brackets.iter().any(|b| !b) {
        return Err(Error::InvalidLieAlgebra(
            "so3-9".into(),
            format!("bracket relations fail: {brackets:?}"),
        ));
    }
    let (h, x, y) = so3_9_matrices();
    let lie = LieRep::new("so(3)", 9, vec![h, x, y])?;
    let gamma = so3_gamma();
    let sg = gamma.hodge_star()?;
    let mut operators = BTreeMap::new();
    operators.insert("zero".to_string(), DiffOpSpec::zero("zero"));
    let mut dual = BTreeMap::new();
    dual.insert("gamma".to_string(), AffineForm::zero(9).with(LAMBDA, sg.clone()));
    operators.insert(
        "dual".into(),
        DiffOpSpec {
            name: "dual".into(),
            params: vec![LAMBDA.into()],
            values: dual,
        },
    );
    Ok(StructureSpec {
        name: "so3-9".into(),
        n: 9,
        lie,
        lie_source: LieSource::Explicit,
        generators: vec![("gamma".into(), gamma), ("*gamma".into(), sg)],
        default_flag: FlagSpec::standard(9),
        operators,
        extra_forms: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{invariants, orbit_matrix};

    #[test]
    fn hermitian_forms_n2() {
        let (f, op, om) = hermitian_forms(4, 2);
        assert_eq!(f, Form::parse(4, "e[1,2] + e[3,4]").unwrap());
        assert_eq!(op, Form::parse(4, "e[1,3] - e[2,4]").unwrap());
        assert_eq!(om, Form::parse(4, "e[1,4] + e[2,3]").unwrap());
    }

    #[test]
    fn su_dimensions() {
        for m in 2..=3 {
            assert_eq!(get_structure("su-even", Some(m)).unwrap().lie.dim(), m * m - 1);
            assert_eq!(get_structure("su-odd", Some(m)).unwrap().lie.dim(), m * m - 1);
        }
        assert!(matches!(
            get_structure("su-even", Some(7)),
            Err(Error::UnsupportedDimension { .. })
        ));
        assert!(matches!(get_structure("nope", None), Err(Error::UnknownStructure(_))));
    }

    #[test]
    fn flags() {
        let s = get_structure("su-odd", Some(2)).unwrap();
        assert_eq!(s.default_flag.insertion_order, vec![1, 3, 2, 5, 4]);
        let s = get_structure("su-even", Some(3)).unwrap();
        assert_eq!(s.default_flag.insertion_order, vec![1, 3, 5, 2, 4, 6]);
        assert!(FlagSpec::new(3, vec![1, 1, 2]).is_err());
    }

    #[test]
    fn exceptional_stabilizers() {
        assert_eq!(get_structure("g2", None).unwrap().lie.dim(), 14);
        assert_eq!(get_structure("spin7", None).unwrap().lie.dim(), 21);
        assert_eq!(get_structure("sp2sp1", None).unwrap().lie.dim(), 13);
        assert_eq!(get_structure("example-712", None).unwrap().lie.dim(), 7);
    }

    #[test]
    fn killing_three_form() {
        let rho = rho_from_killing_form();
        let expected = Form::parse(
            8,
            "e[1,2,3] + 1/2*(e[1,4,7] - e[1,5,6] + e[2,4,6] + e[2,5,7] + e[3,4,5] - e[3,6,7]) \
             + r3/2*(e[4,5,8] + e[6,7,8])",
        )
        .unwrap();
        assert_eq!(rho, expected);
        assert_eq!(orbit_matrix(&rho).unwrap().rank(), 56);
        // so(3) with the identity form gives a multiple of the volume form
        let eps = |a: usize, b: usize, d: usize| -> Scalar {
            match (a, b, d) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => Scalar::one(),
                (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -Scalar::one(),
                _ => Scalar::zero(),
            }
        };
        let c: Vec<Vec<Vec<Scalar>>> = (0..3)
            .map(|a| (0..3).map(|b| (0..3).map(|d| eps(a, b, d)).collect()).collect())
            .collect();
        let f = cartan_three_form(&c, &Matrix::identity(3)).unwrap();
        assert_eq!(f, Form::basis(3, &[1, 2, 3]).unwrap());
        let abelian = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        assert!(cartan_three_form(&abelian, &Matrix::identity(2)).unwrap().is_zero());
        let mut bad = c.clone();
        bad[0][1][2] = Scalar::from_int(5);
        assert!(matches!(
            cartan_three_form(&bad, &Matrix::identity(3)),
            Err(Error::NotAntisymmetric(..))
        ));
    }

    #[test]
    fn so3_9_data() {
        assert_eq!(so3_9_brackets_hold().unwrap(), [true, true, true]);
        let s = get_structure("so3-9", None).unwrap();
        assert_eq!(invariants(&s.lie, 4).len(), 1);
        assert_eq!(so3_gamma().num_terms(), 22);
    }
}
