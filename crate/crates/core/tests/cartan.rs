use edsx_core::cartan::{
    compare_with, debug_product_rank, flag_masks, flag_test, search, stable_flag_test,
    su_even_closed_form, su_odd_printed_form, PolarSystem,
};
use edsx_core::catalog::{get_structure, get_structure_by_label};
use edsx_core::dga::Params;
use edsx_core::exterior::Subspace;
use edsx_core::Form;

#[test]
fn su_even_tables_match_closed_form() {
    for n in 2..=4usize {
        let s = get_structure("su-even", Some(n)).unwrap();
        let r = flag_test(&s, &s.default_flag).unwrap();
        let rows = compare_with(&r.c_values, 2 * n, |k| su_even_closed_form(n, k));
        assert!(rows.iter().all(|row| row.matches), "n={n}: {rows:?}");
        assert_eq!(r.sum_c_partial, 2 * n * (n * n - n + 1));
        assert!(r.ordinary);
    }
}

#[test]
fn su_odd_sums() {
    for (n, expected) in [(2usize, 35usize), (3, 91)] {
        let s = get_structure("su-odd", Some(n)).unwrap();
        let r = flag_test(&s, &s.default_flag).unwrap();
        assert_eq!(r.sum_c_partial, expected);
        assert_eq!(expected, 2 * n.pow(3) + 3 * n * n + 3 * n + 1);
        assert!(r.ordinary);
    }
    let s = get_structure("su-odd", Some(2)).unwrap();
    let r = flag_test(&s, &s.default_flag).unwrap();
    assert_eq!(r.c_values[4], 17);
    let rows = compare_with(&r.c_values, 5, |k| su_odd_printed_form(2, k));
    assert!(rows[..4].iter().all(|row| row.matches));
    assert!(!rows[4].matches);
}

#[test]
fn products_add_no_equations() {
    for label in ["su-even:3", "su-odd:2", "g2"] {
        let s = get_structure_by_label(label).unwrap();
        for mask in flag_masks(&s.default_flag) {
            let labels: Vec<usize> = (1..=s.n).filter(|l| mask & (1 << (l - 1)) != 0).collect();
            let w = Subspace::coordinate(s.n, &labels).unwrap();
            let r = debug_product_rank(&s, &w).unwrap();
            assert_eq!(r.generators_only, r.with_products, "{label} {labels:?}");
        }
    }
}

#[test]
fn polar_dimensions_do_not_see_the_operator() {
    let s = get_structure("su-even", Some(3)).unwrap();
    let mut params = Params::new();
    params.insert("lambda".into(), edsx_core::Scalar::from_int(3));
    params.insert("mu".into(), edsx_core::Scalar::from_int(1));
    let values = s
        .operator("nearly-kahler")
        .unwrap()
        .instantiate(&s.generators, &params)
        .unwrap();
    let mut forms = s.generator_forms();
    let plain = PolarSystem::new(6, &forms).unwrap();
    forms.extend(values.into_iter().filter(|v| !v.is_zero()));
    let extended = PolarSystem::new(6, &forms).unwrap();
    // f(g) lies in A, so the functionals it contributes are already present.
    for mask in 0..64u32 {
        assert_eq!(plain.c_of_mask(mask), extended.c_of_mask(mask));
    }
}

#[test]
fn cartan_inequality_on_every_coordinate_flag() {
    // The exhaustive search errors out if any coordinate flag violates the inequality.
    for label in ["su-even:2", "su-even:3", "su-odd:2", "g2", "example-712", "trivial:4"] {
        let s = get_structure_by_label(label).unwrap();
        let found = search(&s).unwrap();
        assert!(found.best_sum <= found.codim_z0);
    }
}

#[test]
fn stable_forms_give_binomial_flags() {
    let rho = get_structure("psu3", None).unwrap();
    let r = stable_flag_test(rho.form("rho").unwrap(), 8).unwrap();
    assert!(r.polar.ordinary && r.binomial_ok && r.hockey_stick_ok);
    assert_eq!(r.polar.codim_z0, 70);
    let g2 = get_structure("g2", None).unwrap();
    for i in 1..=7 {
        let r = stable_flag_test(g2.form("phi").unwrap(), i).unwrap();
        assert!(r.polar.ordinary && r.binomial_ok && r.hockey_stick_ok);
        assert_eq!(r.polar.codim_z0, 35);
    }
}

#[test]
fn degenerate_two_form_admits_an_ordinary_flag() {
    let s = get_structure("example-712", None).unwrap();
    let found = search(&s).unwrap();
    assert!(found.ordinary_exists);
    let r = flag_test(&s, &found.best_flag).unwrap();
    assert!(r.ordinary);
    let a = Form::parse(7, "e[1,2] + e[3,4]").unwrap();
    for i in 1..=7 {
        assert!(!stable_flag_test(&a, i).unwrap().e_stable_levels[6]);
    }
}
