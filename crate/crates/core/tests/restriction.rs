use edsx_core::catalog::{get_structure_by_label, STRUCTURE_NAMES};
use edsx_core::dga::{check_operator, Params};
use edsx_core::restriction::{drop_label, nearly_hypo, restrict_values, tangent_to_characteristic};
use edsx_core::Scalar;

fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

#[test]
fn nearly_hypo_constants() {
    let r = nearly_hypo(&int(3), &int(0)).unwrap();
    assert!(r.images_match);
    assert!(r.report.kerp_condition && r.report.diagram_commutes);
    assert_eq!(r.f_of_f, Some(int(3)));
    assert_eq!(r.f_of_alpha_omega_minus, Some(int(-2)));
    assert!(r.report.surjectivity_dims.as_ref().unwrap().holds());
}

#[test]
fn characteristic_hypersurface_operator() {
    for n in [2, 3] {
        for (l, m) in [(1, 0), (0, 1), (3, 1)] {
            let c = tangent_to_characteristic(n, &int(l), &int(m)).unwrap();
            assert!(c.all_ok(), "n={n} {:?}", c.checks);
            assert!(c.report.hypotheses_ok);
        }
    }
}

#[test]
fn extends_identity_for_catalog_triples() {
    let samples: Params = [("lambda", 1), ("mu", 3)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), int(v)))
        .collect();
    for name in STRUCTURE_NAMES {
        for label in [format!("{name}:2"), format!("{name}:3"), name.to_string()] {
            let Ok(s) = get_structure_by_label(&label) else { continue };
            if s.n > 8 {
                continue;
            }
            let drop = *s.default_flag.insertion_order.last().unwrap();
            for op in s.operators.values() {
                let Ok(values) = op.instantiate(&s.generators, &samples) else { continue };
                if !check_operator(&s, op, &samples).unwrap().extends_ok {
                    continue;
                }
                let r = restrict_values(&s, values, &drop_label(s.n, drop)).unwrap();
                if let Some(d) = &r.surjectivity_dims {
                    assert!(d.holds(), "{label} {}: {d:?}", op.name);
                }
                assert_eq!(r.kerp_condition, r.diagram_commutes, "{label} {}", op.name);
            }
        }
    }
}
