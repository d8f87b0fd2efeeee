use endtn::structure::IdealForm;
use endtn::{
    count_ideals, enumerate_end, enumerate_ideals, fix_set, green_partition, idempotent_partition, j_leq,
    principal_ideals, regular_elements, Endomorphism, Error, PermissiblePair, Relation, Transformation, Universe,
};

fn tr(v: &[usize]) -> Transformation {
    Transformation::new(v).unwrap()
}

#[test]
fn j_order_matches_two_sided_ideals() {
    for n in 2..=4 {
        let u = Universe::with_table(n).unwrap();
        for a in u.monoid().ids() {
            for b in u.monoid().ids() {
                assert_eq!(u.j_leq_formula(a, b), u.j_leq_brute(a, b).unwrap());
            }
        }
    }
    let top = Endomorphism::identity(5);
    let bottom = Endomorphism::phi_id(5);
    assert!(j_leq(&bottom, &top).unwrap());
    assert!(!j_leq(&top, &bottom).unwrap());
}

#[test]
fn principal_ideals_of_phi_id() {
    let a = Endomorphism::phi_id(3);
    let p = principal_ideals(&a).unwrap();
    let mut e1 = idempotent_partition(3).unwrap().e1;
    let (mut two_sided, mut right) = (p.two_sided.clone(), p.right.clone());
    e1.sort();
    two_sided.sort();
    right.sort();
    assert_eq!(two_sided, e1);
    assert_eq!(right, e1);
    assert_eq!(p.left, vec![a]);
}

#[test]
fn j_order_diagram() {
    let dot = Universe::new(3).unwrap().j_order_dot().unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("Aut"));
    assert!(dot.contains("->"));
}

#[test]
fn ideal_forms_in_order() {
    let forms: Vec<IdealForm> = enumerate_ideals(4).unwrap().map(|d| d.form).collect();
    assert_eq!(forms.len() as u128, count_ideals(4).unwrap());
    assert_eq!(&forms[..2], &[IdealForm::Whole, IdealForm::Singular]);
    let first: Vec<_> = enumerate_ideals(5).unwrap().take(3).collect();
    assert_eq!(first.len(), 3);
}

#[test]
fn small_ideal_counts() {
    let counts: Vec<u128> = (1..=4).map(|n| count_ideals(n).unwrap()).collect();
    for (n, &c) in (1..=4).zip(&counts) {
        let u = Universe::with_table(n).unwrap();
        assert_eq!(u.ideals_brute().unwrap().len() as u128, c, "n={n}");
    }
}

#[test]
fn capacity_guards() {
    assert!(matches!(count_ideals(6), Err(Error::Capacity { .. })));
    assert!(matches!(green_partition(6, Relation::L), Err(Error::Capacity { .. })));
    assert!(matches!(regular_elements(6), Err(Error::Capacity { .. })));
    assert!(matches!(Universe::new(7), Err(Error::Capacity { .. })));
    assert!(green_partition(3, Relation::RStar).is_err());
}

#[test]
fn idempotent_counts_at_six() {
    let p = idempotent_partition(6).unwrap();
    let end = enumerate_end(6).unwrap();
    let brute = end.iter().filter(|a| a.multiply(a).unwrap() == **a).count();
    assert_eq!(p.all().len(), brute);
    assert_eq!(p.identity.len(), 1);
}

#[test]
fn fix_sets() {
    let p = PermissiblePair::new(tr(&[1, 2, 3, 4, 5]), tr(&[1, 1, 1, 1, 1])).unwrap();
    assert_eq!(fix_set(&p).unwrap().elements.len(), 24);
    let q = PermissiblePair::new(tr(&[2, 1, 3]), tr(&[3, 3, 3])).unwrap();
    assert_eq!(fix_set(&q).unwrap().elements, vec![tr(&[1, 2, 3]), tr(&[2, 1, 3])]);
}

#[test]
fn l_trivial_outside_units_at_three_and_five() {
    for n in [3, 5] {
        let p = green_partition(n, Relation::L).unwrap();
        for c in &p.classes {
            assert!(c.len() == 1 || c.iter().all(Endomorphism::is_automorphism), "n={n}");
        }
    }
}

#[test]
fn r_classes_at_five() {
    let p = green_partition(5, Relation::R).unwrap();
    assert_eq!(p.classes.len(), 39);
    assert_eq!(p.relation, Relation::R);
    let json = serde_json::to_value(&p).unwrap();
    assert_eq!(json["relation"], "R");
}

#[test]
fn relation_names_round_trip() {
    for r in Relation::GREEN.into_iter().chain(Relation::EXTENDED) {
        assert_eq!(r.to_string().parse::<Relation>().unwrap(), r);
    }
    assert!("X".parse::<Relation>().is_err());
}
