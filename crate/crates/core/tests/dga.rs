use edsx_core::catalog::get_structure;
use edsx_core::dga::{check_operator, strong_admissibility, z_spaces, Params};
use edsx_core::rep::equivariant_maps;
use edsx_core::Scalar;

fn params(l: i64, m: i64) -> Params {
    [("lambda", l), ("mu", m)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), Scalar::from_int(v)))
        .collect()
}

#[test]
fn su_structures_are_strongly_admissible() {
    for n in 2..=3usize {
        let r = strong_admissibility(&get_structure("su-even", Some(n)).unwrap()).unwrap();
        assert!(r.strongly_admissible, "su-even:{n} {r:?}");
        assert_eq!(r.codim_z0, 2 * n * (n * n - n + 1));
        let r = strong_admissibility(&get_structure("su-odd", Some(n)).unwrap()).unwrap();
        assert!(r.strongly_admissible, "su-odd:{n} {r:?}");
        assert_eq!(r.codim_z0, (2 * n + 1) * (n * n + n + 1));
        assert_eq!(r.z0_dim, r.expected_z0_dim);
    }
}

#[test]
fn parallelism_is_strongly_admissible() {
    let r = strong_admissibility(&get_structure("trivial", Some(3)).unwrap()).unwrap();
    assert!(r.strongly_admissible);
    assert_eq!(r.torsion_dim, 9);
}

#[test]
fn zero_operator_passes_everywhere() {
    for label in ["su-even:2", "su-odd:2", "g2", "psu3", "so3-9", "example-712", "trivial:3"] {
        let s = edsx_core::catalog::get_structure_by_label(label).unwrap();
        let c = check_operator(&s, s.operator("zero").unwrap(), &Params::new()).unwrap();
        assert!(c.all_ok(), "{label}");
        let z = z_spaces(&s, s.operator("zero").unwrap(), &Params::new()).unwrap();
        assert!(z.z_prime_dim.is_some(), "{label}");
    }
}

#[test]
fn odd_families_pass_at_samples() {
    let samples = [0, 1, 3];
    for (n, ops) in [(2, vec!["A", "B"]), (3, vec!["A", "B", "D"])] {
        let s = get_structure("su-odd", Some(n)).unwrap();
        let z0 = z_spaces(&s, s.operator("zero").unwrap(), &Params::new()).unwrap();
        for op in ops {
            for l in samples {
                for m in samples {
                    let f = s.operator(op).unwrap();
                    let c = check_operator(&s, f, &params(l, m)).unwrap();
                    assert!(c.all_ok(), "{op} {l} {m}: {:?}", c.failures);
                    let z = z_spaces(&s, f, &params(l, m)).unwrap();
                    assert_eq!(z.z_dim, z0.z_dim);
                    assert_eq!(z.z_doubleprime_dim, Some(0));
                    assert_eq!(z.xi_f_invariant, Some(true));
                }
            }
        }
    }
}

#[test]
fn equivariant_map_counts() {
    for (n, d) in [(2, 7), (3, 5), (4, 3)] {
        let s = get_structure("su-odd", Some(n)).unwrap();
        assert_eq!(equivariant_maps(&s.lie).len(), d);
    }
}

#[test]
fn so3_dual_operator_does_not_extend() {
    let s = get_structure("so3-9", None).unwrap();
    assert!(equivariant_maps(&s.lie).is_empty());
    let c = check_operator(&s, s.operator("dual").unwrap(), &params(1, 0)).unwrap();
    assert!(!c.extends_ok);
    assert!(c.extension_witness.is_none());
}
