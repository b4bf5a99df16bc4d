//! Named verification suites over the bundled table, shared by the CLI and
//! the acceptance tests.

use crate::braid::BraidWord;
use crate::complex::{build_complex, BuildOptions};
use crate::cube::{build_cube, KhovanovCube, SpanningTree};
use crate::diagram::LinkDiagram;
use crate::homology::{compare_tables, homology_table, HomologyTable, TableTransform};
use crate::jones;
use crate::ring::{LaurentRule, Specialization};
use crate::table::KnotTable;
use crate::tqft::{relation_suite, FrobeniusData};
use rayon::prelude::*;

/// Outcome of one suite run.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "suite {}: {} checks, {}\n",
            self.suite,
            self.checked,
            if self.passed() { "all passed" } else { "FAILED" }
        );
        for f in &self.failures {
            out.push_str(&format!("  counterexample: {f}\n"));
        }
        out
    }
}

/// Full pipeline: cube with ψ and φ for a diagram.
pub fn prepared_cube(d: &LinkDiagram) -> Result<KhovanovCube, String> {
    let alg = FrobeniusData::universal();
    let mut cube = build_cube(d, &alg);
    cube.populate_psi().map_err(|e| e.to_string())?;
    cube.edge_assignment().map_err(|e| e.to_string())?;
    Ok(cube)
}

/// Homology table of a diagram under an integer specialization.
pub fn khovanov_homology(
    d: &LinkDiagram,
    spec: &Specialization,
) -> Result<HomologyTable, String> {
    let cube = prepared_cube(d)?;
    let complex = build_complex(&cube, spec, BuildOptions::default()).map_err(|e| e.to_string())?;
    Ok(homology_table(&complex))
}

fn table_diagrams(max_crossings: usize) -> Result<Vec<(String, LinkDiagram)>, String> {
    let table = KnotTable::load().map_err(|e| e.to_string())?;
    table.diagrams_up_to(max_crossings).map_err(|e| e.to_string())
}

/// classify_face must reproduce the functor coefficient on every 2-face.
pub fn suite_faces(max_crossings: usize) -> Result<VerifyReport, String> {
    let diagrams = table_diagrams(max_crossings)?;
    let results: Vec<(usize, Vec<String>)> = diagrams
        .par_iter()
        .map(|(name, d)| {
            let alg = FrobeniusData::universal();
            let cube = build_cube(d, &alg);
            let mut checked = 0;
            let mut failures = Vec::new();
            for f in cube.faces() {
                checked += 1;
                match (cube.face_coefficient(f), cube.classify_face(f)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => failures.push(format!("{name} face {f:?}: {a:?} vs {b:?}")),
                }
            }
            (checked, failures)
        })
        .collect();
    Ok(collect_report("faces", results))
}

/// dψ = 1 on every 3-cell of every bundled cube.
pub fn suite_cocycle(max_crossings: usize) -> Result<VerifyReport, String> {
    let diagrams = table_diagrams(max_crossings)?;
    let results: Vec<(usize, Vec<String>)> = diagrams
        .par_iter()
        .map(|(name, d)| {
            let alg = FrobeniusData::universal();
            let mut cube = build_cube(d, &alg);
            let mut failures = Vec::new();
            match cube.populate_psi() {
                Ok(()) => match cube.cocycle_check() {
                    Ok((true, _)) => {}
                    Ok((false, bad)) => {
                        failures.push(format!("{name}: {} bad 3-cells, first {:?}", bad.len(), bad.first()))
                    }
                    Err(e) => failures.push(format!("{name}: {e}")),
                },
                Err(e) => failures.push(format!("{name}: {e}")),
            }
            (1, failures)
        })
        .collect();
    Ok(collect_report("cocycle", results))
}

/// d ∘ d = 0 for every bundled diagram under the given specialization.
pub fn suite_d2(max_crossings: usize, spec: &Specialization) -> Result<VerifyReport, String> {
    let diagrams = table_diagrams(max_crossings)?;
    let results: Vec<(usize, Vec<String>)> = diagrams
        .par_iter()
        .map(|(name, d)| {
            let mut failures = Vec::new();
            match prepared_cube(d) {
                Ok(cube) => {
                    match build_complex(&cube, spec, BuildOptions::default()) {
                        Ok(c) => {
                            if let Err(e) = c.verify_d_squared() {
                                failures.push(format!("{name}: {e}"));
                            }
                        }
                        Err(e) => failures.push(format!("{name}: {e}")),
                    }
                }
                Err(e) => failures.push(format!("{name}: {e}")),
            }
            (1, failures)
        })
        .collect();
    Ok(collect_report("d2", results))
}

/// χ_q of the complex equals the q-state-sum Jones polynomial, and the Jones
/// polynomial arises from it by the exact substitution and division.
pub fn suite_euler(max_crossings: usize) -> Result<VerifyReport, String> {
    let diagrams = table_diagrams(max_crossings)?;
    let results: Vec<(usize, Vec<String>)> = diagrams
        .par_iter()
        .map(|(name, d)| {
            let mut failures = Vec::new();
            let j = jones::jones_unnormalized(d);
            match prepared_cube(d) {
                Ok(cube) => {
                    for spec in [Specialization::even(), Specialization::odd()] {
                        match build_complex(&cube, &spec, BuildOptions::default()) {
                            Ok(c) => {
                                if c.graded_euler() != j {
                                    failures.push(format!(
                                        "{name} ({spec}): chi_q {} != J {}",
                                        c.graded_euler(),
                                        j
                                    ));
                                }
                            }
                            Err(e) => failures.push(format!("{name}: {e}")),
                        }
                    }
                }
                Err(e) => failures.push(format!("{name}: {e}")),
            }
            match (jones::jones_polynomial(d), jones::jones_from_unnormalized(&j)) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => failures.push(format!("{name}: V mismatch {a:?} vs {b:?}")),
            }
            (3, failures)
        })
        .collect();
    Ok(collect_report("euler", results))
}

/// Every axiom of the chronological Frobenius algebra plus S, T, 4Tu.
pub fn suite_frobenius() -> VerifyReport {
    let report = relation_suite(&FrobeniusData::universal());
    let checked = report.len();
    let failures = report
        .into_iter()
        .filter(|r| !r.holds)
        .map(|r| r.name.to_string())
        .collect();
    VerifyReport { suite: "frobenius".into(), checked, failures }
}

/// Diagram pairs related by a single Reidemeister move, as braid closures.
pub fn reidemeister_pairs() -> Vec<(String, LinkDiagram, LinkDiagram)> {
    let mut pairs = Vec::new();
    let bases = [
        BraidWord::new(2, vec![1, 1, 1]),
        BraidWord::new(3, vec![1, -2, 1, -2]),
        BraidWord::new(2, vec![1, 1, 1, 1, 1]),
        BraidWord::new(2, vec![1, 1]),
        BraidWord::new(3, vec![1, 2, 1, 2]),
        BraidWord::new(2, vec![-1, -1, -1]),
    ];
    // R1: Markov stabilization adds a kink to the closure.
    for (i, base) in bases.iter().enumerate() {
        let stab = base.stabilized(i % 2 == 0);
        pairs.push((
            format!("R1 #{i}"),
            base.closure().expect("valid closure"),
            stab.closure().expect("valid closure"),
        ));
    }
    // R2: cancel a generator pair.
    for (i, base) in bases.iter().enumerate() {
        let at = i.min(base.letters.len());
        let gen = if base.strands > 2 && i % 2 == 0 { 2 } else { 1 };
        let poked = base.with_r2_pair(at, gen);
        pairs.push((
            format!("R2 #{i}"),
            base.closure().expect("valid closure"),
            poked.closure().expect("valid closure"),
        ));
    }
    // R3: slide a strand across a crossing.
    let r3_bases = [
        (BraidWord::new(3, vec![1, 2, 1]), 0usize),
        (BraidWord::new(3, vec![1, 2, 1, 2]), 0),
        (BraidWord::new(3, vec![1, 2, 1, 1]), 0),
        (BraidWord::new(3, vec![2, 1, 2, -1]), 0),
        (BraidWord::new(3, vec![-1, -2, -1, -2]), 0),
        (BraidWord::new(3, vec![1, 1, 2, 1]), 1),
    ];
    for (i, (base, at)) in r3_bases.iter().enumerate() {
        let slid = base.with_r3_slide(*at).expect("slidable word");
        pairs.push((
            format!("R3 #{i}"),
            base.closure().expect("valid closure"),
            slid.closure().expect("valid closure"),
        ));
    }
    pairs
}

/// Homology tables agree across Reidemeister pairs in both theories.
pub fn suite_reidemeister() -> VerifyReport {
    let pairs = reidemeister_pairs();
    let results: Vec<(usize, Vec<String>)> = pairs
        .par_iter()
        .map(|(name, a, b)| {
            let mut failures = Vec::new();
            for spec in [Specialization::even(), Specialization::odd()] {
                match (khovanov_homology(a, &spec), khovanov_homology(b, &spec)) {
                    (Ok(ta), Ok(tb)) => {
                        if !compare_tables(&ta, &tb, TableTransform::Identity) {
                            failures.push(format!("{name} ({spec}): tables differ"));
                        }
                    }
                    (a, b) => failures.push(format!("{name}: {a:?} / {b:?}")),
                }
            }
            (2, failures)
        })
        .collect();
    collect_report("reidemeister", results).into()
}

/// Jones mirror symmetry and Betti mirror duality.
pub fn suite_mirror(max_crossings: usize) -> Result<VerifyReport, String> {
    let diagrams = table_diagrams(max_crossings)?;
    let results: Vec<(usize, Vec<String>)> = diagrams
        .par_iter()
        .map(|(name, d)| {
            let mut failures = Vec::new();
            let m = d.mirror();
            let v = jones::jones_polynomial(d).unwrap();
            let vm = jones::jones_polynomial(&m).unwrap();
            if v.substitute(LaurentRule::Invert).unwrap() != vm {
                failures.push(format!("{name}: V(L*) != V(L)(1/t)"));
            }
            let mut checked = 1;
            if d.crossing_count() <= 6 {
                for spec in [Specialization::even(), Specialization::odd()] {
                    checked += 1;
                    match (khovanov_homology(&m, &spec), khovanov_homology(d, &spec)) {
                        (Ok(tm), Ok(t)) => {
                            if !compare_tables(&tm, &t, TableTransform::MirrorDual) {
                                failures.push(format!("{name} ({spec}): mirror duality fails"));
                            }
                        }
                        (a, b) => failures.push(format!("{name}: {a:?} / {b:?}")),
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    Ok(collect_report("mirror", results))
}

/// Arrow re-choices and edge-assignment re-solves leave homology unchanged.
pub fn suite_arrows(max_crossings: usize, rechoices: usize, seed: u64) -> Result<VerifyReport, String> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let diagrams = table_diagrams(max_crossings)?;
    let results: Vec<(usize, Vec<String>)> = diagrams
        .par_iter()
        .map(|(name, d)| {
            let mut failures = Vec::new();
            let mut checked = 0;
            let reference = match khovanov_homology(d, &Specialization::even()) {
                Ok(t) => t,
                Err(e) => return (0, vec![format!("{name}: {e}")]),
            };
            let mut rng = StdRng::seed_from_u64(seed ^ d.crossing_count() as u64);
            for trial in 0..rechoices {
                let mut dd = d.clone();
                for k in 0..dd.crossing_count() {
                    dd.set_arrow(k, rng.gen());
                }
                checked += 1;
                match khovanov_homology(&dd, &Specialization::even()) {
                    Ok(t) => {
                        if t != reference {
                            failures.push(format!("{name} trial {trial}: homology changed"));
                        }
                    }
                    Err(e) => failures.push(format!("{name} trial {trial}: {e}")),
                }
            }
            // Re-solve φ over the other spanning tree; the two assignments
            // must differ by a coboundary and give the same homology.
            let alg = FrobeniusData::universal();
            let mut cube = build_cube(d, &alg);
            cube.populate_psi().unwrap();
            cube.edge_assignment().unwrap();
            let phi1 = cube.phi_values().unwrap().clone();
            checked += 1;
            match cube.solve_edge_assignment(SpanningTree::HighestBit) {
                Ok(phi2) => {
                    if !crate::cube::differ_by_coboundary(cube.dimension(), &phi1, &phi2) {
                        failures.push(format!("{name}: assignments do not differ by a coboundary"));
                    }
                    let mut cube2 = cube;
                    cube2.edge_assignment_with_tree(SpanningTree::HighestBit).unwrap();
                    match build_complex(&cube2, &Specialization::even(), BuildOptions::default())
                    {
                        Ok(c) => {
                            if homology_table(&c) != reference {
                                failures.push(format!("{name}: re-solved phi changed homology"));
                            }
                        }
                        Err(e) => failures.push(format!("{name}: {e}")),
                    }
                }
                Err(e) => failures.push(format!("{name}: {e}")),
            }
            (checked, failures)
        })
        .collect();
    Ok(collect_report("arrows", results))
}

fn collect_report(suite: &str, results: Vec<(usize, Vec<String>)>) -> VerifyReport {
    let checked = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, f)| f).collect();
    VerifyReport { suite: suite.into(), checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_suite_passes() {
        let r = suite_frobenius();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn small_face_and_cocycle_suites_pass() {
        let r = suite_faces(5).unwrap();
        assert!(r.passed(), "{}", r.render());
        let r = suite_cocycle(5).unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn reidemeister_pairs_are_well_formed() {
        let pairs = reidemeister_pairs();
        assert!(pairs.iter().filter(|(n, _, _)| n.starts_with("R1")).count() >= 5);
        assert!(pairs.iter().filter(|(n, _, _)| n.starts_with("R2")).count() >= 5);
        assert!(pairs.iter().filter(|(n, _, _)| n.starts_with("R3")).count() >= 5);
        for (name, a, b) in &pairs {
            let da = a.crossing_count() as i64;
            let db = b.crossing_count() as i64;
            let expected = match &name[..2] {
                "R1" => 1,
                "R2" => 2,
                _ => 0,
            };
            assert_eq!((db - da).abs(), expected, "{name}");
        }
    }
}
