use std::fmt;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use edsx_core::cartan::{debug_product_rank, flag_masks, flag_test, search};
use edsx_core::catalog::{get_structure_with, parse_structure_name, CatalogOptions, FlagSpec, StructureSpec, LAMBDA, MU};
use edsx_core::dga::{check_operator, strong_admissibility, z_spaces, Params};
use edsx_core::rep::{casimir_decompose, invariants, RepSpace};
use edsx_core::restriction::{drop_label, restrict_structure};
use edsx_core::stability::stability_with;
use edsx_core::{Scalar, Subspace};
use edsx::checks::{self, Status};
use edsx::properties::DEFAULT_CASES;
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "edsx", version, about = "Exact exterior-algebra checks for G-structures")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StructureArg {
    /// Catalog name, optionally with a dimension parameter (`su-even:3`).
    #[arg(long)]
    structure: String,
    /// Use the three-form ρ exactly as printed instead of the validated one.
    #[arg(long)]
    as_printed: bool,
}

#[derive(Args)]
struct OperatorArg {
    #[arg(long, default_value = "zero")]
    operator: String,
    /// Parameter values, e.g. `lambda=3,mu=0` (`λ`, `μ` accepted).
    #[arg(long, value_delimiter = ',', value_parser = parse_param)]
    params: Vec<(String, Scalar)>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant forms of the structure algebra.
    Invariants {
        #[command(flatten)]
        structure: StructureArg,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Orbit, stabilizer and hyperplane stability of a catalog form.
    Stability {
        #[command(flatten)]
        structure: StructureArg,
        /// Form name; defaults to the first generator.
        #[arg(long)]
        form: Option<String>,
        /// Also test a fixed sample of non-coordinate hyperplanes.
        #[arg(long)]
        sampled: bool,
    },
    /// Check that an operator defines a derivation and report its Z-spaces.
    Dga {
        #[command(flatten)]
        structure: StructureArg,
        #[command(flatten)]
        operator: OperatorArg,
    },
    /// Integral-element spaces, or strong admissibility with `--strong`.
    Zspaces {
        #[command(flatten)]
        structure: StructureArg,
        #[command(flatten)]
        operator: OperatorArg,
        #[arg(long)]
        strong: bool,
    },
    /// Cartan's test on a coordinate flag.
    Cartan {
        #[command(flatten)]
        structure: StructureArg,
        /// Insertion order of basis vectors, e.g. `1,3,5,2,4,6`.
        #[arg(long, value_delimiter = ',')]
        flag: Option<Vec<usize>>,
        /// Search all coordinate flags for the largest sum.
        #[arg(long)]
        search: bool,
        /// Recompute polar ranks with products of generators.
        #[arg(long)]
        debug_products: bool,
    },
    /// Restrict the structure and operator to a coordinate hyperplane.
    Restrict {
        #[command(flatten)]
        structure: StructureArg,
        #[command(flatten)]
        operator: OperatorArg,
        /// Label of the dropped basis vector; defaults to the last label of the default flag.
        #[arg(long)]
        drop: Option<usize>,
    },
    /// Irreducible decomposition under a three-dimensional algebra.
    Decompose {
        #[command(flatten)]
        structure: StructureArg,
        /// One of `tangent`, `forms:P`, `hom`, `complement`, `torsion`.
        #[arg(long, default_value = "complement")]
        space: String,
    },
    /// Run the acceptance battery.
    PaperCheck {
        /// Restrict to the given criteria (1..=10).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<usize>,
        /// Cases per randomized property suite.
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: u32,
    },
    /// Dump a catalog structure.
    Export {
        #[command(flatten)]
        structure: StructureArg,
    },
}

/// Bad user input; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn parse_param(s: &str) -> Result<(String, Scalar), String> {
    let (key, value) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let key = match key.trim() {
        "λ" | "l" => LAMBDA,
        "μ" | "m" => MU,
        k => k,
    };
    let value = value.trim().parse::<Scalar>().map_err(|e| e.to_string())?;
    Ok((key.to_string(), value))
}

fn load(arg: &StructureArg) -> Result<StructureSpec> {
    let (name, n) = parse_structure_name(&arg.structure)?;
    let opts = CatalogOptions {
        rho_as_printed: arg.as_printed,
    };
    Ok(get_structure_with(&name, n, opts)?)
}

fn params_of(op: &OperatorArg) -> Params {
    op.params.iter().cloned().collect()
}

fn is_usage(e: &anyhow::Error) -> bool {
    use edsx_core::Error::*;
    if e.downcast_ref::<Usage>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<edsx_core::Error>(),
        Some(
            UnknownStructure(_)
                | UnsupportedDimension { .. }
                | UnknownOperator(_)
                | UnknownForm(_)
                | MissingParameter(_)
                | Parse { .. }
                | InvalidFlag(_)
                | IndexOutOfRange { .. }
                | NonCoordinateSubspace
        )
    )
}

/// Command output: JSON payload, text rendering and whether all assertions held.
struct Output {
    json: serde_json::Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(payload: &impl Serialize, text: String) -> Result<Self> {
        Ok(Output {
            json: serde_json::to_value(payload)?,
            text,
            ok: true,
        })
    }

    fn asserting(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn labels_of(mask: u32, n: usize) -> Vec<usize> {
    (1..=n).filter(|l| mask & (1 << (l - 1)) != 0).collect()
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Invariants { structure, degree } => {
            let s = load(&structure)?;
            let degrees: Vec<usize> = match degree {
                Some(p) if p > s.n => return Err(Usage(format!("degree {p} exceeds n = {}", s.n)).into()),
                Some(p) => vec![p],
                None => (0..=s.n).collect(),
            };
            let rows: Vec<_> = degrees
                .iter()
                .map(|&p| {
                    let forms: Vec<String> = invariants(&s.lie, p).iter().map(|f| f.to_string()).collect();
                    json!({ "degree": p, "dim": forms.len(), "forms": forms })
                })
                .collect();
            let text = rows
                .iter()
                .map(|r| format!("degree {}: dim {}", r["degree"], r["dim"]))
                .collect::<Vec<_>>()
                .join("\n");
            let payload = json!({ "structure": s.name, "n": s.n, "invariants": rows });
            Output::new(&payload, text)
        }
        Command::Stability { structure, form, sampled } => {
            let s = load(&structure)?;
            let name = form.unwrap_or_else(|| s.generators[0].0.clone());
            let r = stability_with(s.form(&name)?, sampled)?;
            let mut text = format!(
                "{name}: degree {}, orbit {} of {}, stabilizer {}, stable {}\nE-stable coordinate hyperplanes: {:?}",
                r.degree,
                r.orbit_dim,
                r.full_dim,
                r.stabilizer_dim,
                r.stable,
                r.e_stable_labels()
            );
            if let Some(sm) = &r.sampled {
                let count = sm.e_stable.iter().filter(|&&b| b).count();
                text.push_str(&format!("\nsampled hyperplanes E-stable: {count} of {}", sm.e_stable.len()));
            }
            Output::new(&r, text)
        }
        Command::Dga { structure, operator } => {
            let s = load(&structure)?;
            let f = s.operator(&operator.operator)?;
            let params = params_of(&operator);
            let check = check_operator(&s, f, &params)?;
            let z = z_spaces(&s, f, &params)?;
            let mut text = format!(
                "leibniz {}, square zero {}, extends {} ({} relations)\ndim Z' {:?}, dim Z {:?}, codim Z {}, dim Z'' {:?}\nxi_f nonzero {:?}, invariant {:?}",
                check.leibniz_ok,
                check.square_zero_ok,
                check.extends_ok,
                check.relations_checked,
                z.z_prime_dim,
                z.z_dim,
                z.codim_z,
                z.z_doubleprime_dim,
                z.xi_f_nonzero,
                z.xi_f_invariant
            );
            for failure in &check.failures {
                text.push_str(&format!("\nfailure: {failure}"));
            }
            let ok = check.all_ok();
            Ok(Output::new(&json!({ "check": check, "z": z }), text)?.asserting(ok))
        }
        Command::Zspaces { structure, operator, strong } => {
            let s = load(&structure)?;
            if strong {
                let a = strong_admissibility(&s)?;
                let text = format!(
                    "strongly admissible {}\ncodim Z_0 {}, torsion dim {}, dim Z_0 {} (expected {}), dim Z''_0 {}",
                    a.strongly_admissible, a.codim_z0, a.torsion_dim, a.z0_dim, a.expected_z0_dim, a.z_doubleprime_dim
                );
                let ok = a.strongly_admissible;
                return Ok(Output::new(&a, text)?.asserting(ok));
            }
            let z = z_spaces(&s, s.operator(&operator.operator)?, &params_of(&operator))?;
            let text = format!(
                "dim Z' {:?}, dim Z {:?}, codim Z {}, dim Z'' {:?}\nxi_f nonzero {:?}, invariant {:?}",
                z.z_prime_dim, z.z_dim, z.codim_z, z.z_doubleprime_dim, z.xi_f_nonzero, z.xi_f_invariant
            );
            Output::new(&z, text)
        }
        Command::Cartan { structure, flag, search: do_search, debug_products } => {
            let s = load(&structure)?;
            let mut flag = match flag {
                Some(order) => FlagSpec::new(s.n, order)?,
                None => s.default_flag.clone(),
            };
            let found = if do_search {
                let f = search(&s)?;
                flag = f.best_flag.clone();
                Some(f)
            } else {
                None
            };
            let r = flag_test(&s, &flag)?;
            let mut text = format!(
                "flag {:?}\nc = {:?}\nsum {} against codim Z_0 {}, ordinary {}",
                r.flag, r.c_values, r.sum_c_partial, r.codim_z0, r.ordinary
            );
            if let Some(f) = &found {
                text.push_str(&format!("\nbest sum over coordinate flags {}, ordinary flag exists {}", f.best_sum, f.ordinary_exists));
            }
            let products = if debug_products {
                let rows = flag_masks(&flag)
                    .into_iter()
                    .map(|mask| {
                        let w = Subspace::coordinate(s.n, &labels_of(mask, s.n))?;
                        debug_product_rank(&s, &w)
                    })
                    .collect::<edsx_core::Result<Vec<_>>>()?;
                for (k, p) in rows.iter().enumerate() {
                    text.push_str(&format!("\nW_{k}: generators {}, with products {}", p.generators_only, p.with_products));
                }
                Some(rows)
            } else {
                None
            };
            Output::new(&json!({ "polar": r, "search": found, "products": products }), text)
        }
        Command::Restrict { structure, operator, drop } => {
            let s = load(&structure)?;
            let drop = drop.unwrap_or(*s.default_flag.insertion_order.last().context("empty flag")?);
            if drop == 0 || drop > s.n {
                return Err(Usage(format!("--drop must lie in 1..={}", s.n)).into());
            }
            let w = Subspace::coordinate(s.n, &drop_label(s.n, drop))?;
            let r = restrict_structure(&s, s.operator(&operator.operator)?, &params_of(&operator), &w)?;
            let mut text = format!(
                "W = {:?}\nker p condition {}, diagram commutes {}, extends {}\nflag position {:?}, relatively admissible {}, hypotheses {}",
                r.w_labels, r.kerp_condition, r.diagram_commutes, r.extends_ok, r.flag_position, r.relatively_admissible, r.hypotheses_ok
            );
            for v in r.f_w.iter().flatten() {
                text.push_str(&format!("\n{} = {}  ->  {}", v.source, v.form, v.expression));
            }
            if let Some(d) = &r.surjectivity_dims {
                text.push_str(&format!(
                    "\ndim proj Z_f {} (unconstrained {}), dim Z_(f_W) {:?}",
                    d.projection_dim, d.unconstrained_projection_dim, d.z_fw_dim
                ));
            }
            Output::new(&r, text)
        }
        Command::Decompose { structure, space } => {
            let s = load(&structure)?;
            let space = match space.as_str() {
                "tangent" => RepSpace::Tangent,
                "hom" => RepSpace::Hom,
                "complement" => RepSpace::TensorComplement,
                "torsion" => RepSpace::TorsionQuotient,
                other => match other.strip_prefix("forms:").and_then(|p| p.parse().ok()) {
                    Some(p) => RepSpace::Forms(p),
                    None => return Err(Usage(format!("unknown space `{other}`")).into()),
                },
            };
            let d = casimir_decompose(&s.lie, space)?;
            let text = format!(
                "dimension {}, {} components ({})\n{}",
                d.space_dim,
                d.component_count(),
                d.method,
                d.components
                    .iter()
                    .map(|(dim, m)| format!("{dim}:{m}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Output::new(&d, text)
        }
        Command::PaperCheck { criterion, cases } => {
            let selected = if criterion.is_empty() {
                checks::CRITERIA.collect()
            } else {
                if let Some(k) = criterion.iter().find(|k| !checks::CRITERIA.contains(k)) {
                    return Err(Usage(format!("no criterion {k}")).into());
                }
                criterion
            };
            let summary = checks::summarize(checks::run_criteria(&selected, cases, checks::thread_count()));
            let text = render_summary(&summary);
            let ok = summary.passed;
            Ok(Output::new(&summary, text)?.asserting(ok))
        }
        Command::Export { structure } => {
            let s = load(&structure)?;
            let e = s.export();
            let text = serde_json::to_string_pretty(&e)?;
            Output::new(&e, text)
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Flagged => "flagged",
        Status::Report => "report",
    }
}

fn render_summary(summary: &checks::Summary) -> String {
    let mut out = Vec::new();
    for c in &summary.criteria {
        out.push(format!(
            "criterion {:>2} {}: {}",
            c.criterion,
            if c.passed() { "PASS" } else { "FAIL" },
            c.title
        ));
        for check in &c.checks {
            let mut line = format!("  [{}] {}: {}", status_word(check.status), check.id, check.description);
            if check.status == Status::Report {
                line.push_str(&format!(" = {}", check.computed));
            } else if check.status != Status::Pass {
                line.push_str(&format!(" (expected {}, computed {})", check.expected, check.computed));
            }
            out.push(line);
        }
    }
    out.push(format!("flagged discrepancies: {}", summary.flagged.len()));
    for f in &summary.flagged {
        out.push(format!("  {}: {} (printed {}, computed {})", f.id, f.description, f.expected, f.computed));
    }
    out.push(format!("result: {}", if summary.passed { "PASS" } else { "FAIL" }));
    out.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
