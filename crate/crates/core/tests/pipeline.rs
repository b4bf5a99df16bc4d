//! End-to-end pipeline tests with frozen homology tables. Expected values
//! were computed by the Smith-normal-form oracle and are pinned here after
//! cross-checking their graded Euler characteristics against the independent
//! state sums.

use khovanov::diagram::standard;
use khovanov::homology::HomologyTable;
use khovanov::jones;
use khovanov::ring::Specialization;
use khovanov::verify::khovanov_homology;
use num_bigint::BigInt;

fn table(rows: &[(i64, i64, usize, &[i64])]) -> HomologyTable {
    let mut t = HomologyTable::default();
    for &(r, q, betti, torsion) in rows {
        t.groups.insert(
            (r, q),
            (betti, torsion.iter().map(|&d| BigInt::from(d)).collect()),
        );
    }
    t
}

#[test]
fn unknot_homology() {
    for spec in [Specialization::even(), Specialization::odd()] {
        let t = khovanov_homology(&standard::unknot(), &spec).unwrap();
        assert_eq!(t, table(&[(0, 1, 1, &[]), (0, -1, 1, &[])]));
    }
}

#[test]
fn left_trefoil_even_homology() {
    let t = khovanov_homology(&standard::left_trefoil(), &Specialization::even()).unwrap();
    let expected = table(&[
        (-3, -9, 1, &[]),
        (-2, -7, 0, &[2]),
        (-2, -5, 1, &[]),
        (0, -3, 1, &[]),
        (0, -1, 1, &[]),
    ]);
    assert_eq!(t, expected);
    assert_eq!(t.graded_euler(), jones::jones_unnormalized(&standard::left_trefoil()));
}

#[test]
fn left_trefoil_odd_homology() {
    // The odd theory keeps the same Euler characteristic but is torsion-free
    // on the trefoil, with an extra cancelling pair in degrees (-3,-7), (-2,-7).
    let t = khovanov_homology(&standard::left_trefoil(), &Specialization::odd()).unwrap();
    let expected = table(&[
        (-3, -9, 1, &[]),
        (-3, -7, 1, &[]),
        (-2, -7, 1, &[]),
        (-2, -5, 1, &[]),
        (0, -3, 1, &[]),
        (0, -1, 1, &[]),
    ]);
    assert_eq!(t, expected);
    assert_eq!(t.graded_euler(), jones::jones_unnormalized(&standard::left_trefoil()));
}

#[test]
fn right_trefoil_even_homology() {
    let t = khovanov_homology(&standard::right_trefoil(), &Specialization::even()).unwrap();
    let expected = table(&[
        (0, 1, 1, &[]),
        (0, 3, 1, &[]),
        (2, 5, 1, &[]),
        (3, 7, 0, &[2]),
        (3, 9, 1, &[]),
    ]);
    assert_eq!(t, expected);
}

#[test]
fn figure_eight_homology() {
    let t = khovanov_homology(&standard::figure_eight(), &Specialization::even()).unwrap();
    let expected = table(&[
        (-2, -5, 1, &[]),
        (-1, -3, 0, &[2]),
        (-1, -1, 1, &[]),
        (0, -1, 1, &[]),
        (0, 1, 1, &[]),
        (1, 1, 1, &[]),
        (2, 3, 0, &[2]),
        (2, 5, 1, &[]),
    ]);
    assert_eq!(t, expected);
}

#[test]
fn positive_hopf_homology() {
    let t = khovanov_homology(&standard::hopf_link(), &Specialization::even()).unwrap();
    let expected = table(&[
        (0, 0, 1, &[]),
        (0, 2, 1, &[]),
        (2, 4, 1, &[]),
        (2, 6, 1, &[]),
    ]);
    assert_eq!(t, expected);
}

#[test]
fn even_and_odd_euler_agree_on_five_two() {
    let table = khovanov::table::KnotTable::load().unwrap();
    let d = table.get("5_2").unwrap().unwrap();
    let even = khovanov_homology(&d, &Specialization::even()).unwrap();
    let odd = khovanov_homology(&d, &Specialization::odd()).unwrap();
    assert_eq!(even.graded_euler(), odd.graded_euler());
    assert_eq!(even.graded_euler(), jones::jones_unnormalized(&d));
}
