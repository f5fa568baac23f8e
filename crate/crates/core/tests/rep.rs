use edsx_core::catalog::get_structure;
use edsx_core::rep::{casimir_decompose, invariants, RepSpace};

#[test]
fn so3_torsion_decomposition() {
    let s = get_structure("so3-9", None).unwrap();
    let d = casimir_decompose(&s.lie, RepSpace::TensorComplement).unwrap();
    assert_eq!(d.space_dim, 297);
    assert_eq!(d.component_count(), 25);
}

#[test]
fn so3_invariant_counts() {
    let s = get_structure("so3-9", None).unwrap();
    let dims: Vec<usize> = (1..=4).map(|p| invariants(&s.lie, p).len()).collect();
    assert_eq!(dims, [0, 0, 0, 1]);
    assert_eq!(invariants(&s.lie, 5).len(), 1);
}
