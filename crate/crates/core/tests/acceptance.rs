//! Release gates. Each test drives one acceptance criterion end to end
//! through the claim runner, prints a single pass/fail line with its
//! wall-clock cost (and limit, where the gate carries one), and fails loudly
//! if any underlying claim does not pass.
//!
//! Run with `--nocapture` to see the per-gate lines on a green build.

use std::time::{Duration, Instant};

use braidforge_core::suite::{run_claims, ClaimRecord, ClaimStatus, SuiteConfig};

/// Run the named claims at their registered strand counts, print the gate's
/// one-line verdict, and assert that everything passed within the limit.
fn gate(index: u32, limit_secs: Option<u64>, label: &str, ids: &[&str]) -> Vec<ClaimRecord> {
    let cfg = SuiteConfig::default();
    let started = Instant::now();
    let records = run_claims(ids, &cfg);
    let elapsed = started.elapsed();
    let all_pass = records
        .iter()
        .all(|r| matches!(r.status, ClaimStatus::Pass));
    let verdict = if all_pass { "pass" } else { "FAIL" };
    match limit_secs {
        Some(limit) => println!(
            "acceptance {index:02} {verdict} {:7.1}s (limit {limit}s)  {label}",
            elapsed.as_secs_f64()
        ),
        None => println!(
            "acceptance {index:02} {verdict} {:7.1}s  {label}",
            elapsed.as_secs_f64()
        ),
    }
    for r in records
        .iter()
        .filter(|r| !matches!(r.status, ClaimStatus::Pass))
    {
        println!(
            "    {} n={}: {} {}",
            r.claim_id,
            r.n,
            r.status,
            r.witness.as_deref().unwrap_or("")
        );
    }
    assert!(
        all_pass,
        "gate {index:02} ({label}): not every claim passed"
    );
    if let Some(limit) = limit_secs {
        assert!(
            elapsed < Duration::from_secs(limit),
            "gate {index:02} took {:.1}s, over its {limit}s limit",
            elapsed.as_secs_f64()
        );
    }
    records
}

#[test]
fn gate_01_catalog_preserves_defining_relations() {
    gate(
        1,
        Some(60),
        "every cataloged automorphism preserves the defining relations exactly, n = 3..6",
        &["relation-preservation"],
    );
}

#[test]
fn gate_02_crossing_table_matches_action_oracle() {
    gate(
        2,
        Some(30),
        "the crossing conjugation table matches the strand action oracle, n = 3..6",
        &["braid-action-table"],
    );
}

#[test]
fn gate_03_inversion_map_matches_conjugated_expansions() {
    gate(
        3,
        Some(60),
        "band inversion equals letter inversion up to half-twist conjugation, n = 3..5",
        &["t-map-vs-letter-inversion"],
    );
}

#[test]
fn gate_04_flip_composition_and_involution_laws() {
    gate(
        4,
        None,
        "t then eps is psi; psi is an involution; psi conjugates each twist map to its inverse",
        &[
            "t-then-eps-equals-psi",
            "psi-involution",
            "psi-conjugates-phi-to-inverse",
        ],
    );
}

#[test]
fn gate_05_sign_flip_candidate_is_obstructed() {
    let records = gate(
        5,
        None,
        "the sign-flipped candidate map admits no signed-band form; abelianized witness row reported, n = 4..6",
        &["w-map-obstruction"],
    );
    for r in &records {
        let row = (2..=r.n)
            .map(|k| format!("e(1,{k})"))
            .collect::<Vec<_>>()
            .join(" - ");
        let row = format!("-{row}");
        let witness = r.witness.as_deref().unwrap_or("");
        assert!(
            witness.contains(&row),
            "n={}: witness {witness:?} lacks the abelianized row {row:?}",
            r.n
        );
    }
}

#[test]
fn gate_06_four_strand_presentation_relations_hold_exactly() {
    gate(
        6,
        Some(120),
        "all listed four-strand automorphism relations hold exactly",
        &["aut-presentation-relations"],
    );
}

#[test]
fn gate_07_mapping_class_relators_vanish_mod_center() {
    gate(
        7,
        None,
        "the mapping-class relators vanish modulo the center on four strands",
        &["mapping-class-relators-mod-center"],
    );
}

#[test]
fn gate_08_three_strand_package() {
    gate(
        8,
        None,
        "three-strand coordinates, automorphism relations, rank-two relators, and center-fixing lifts",
        &[
            "three-strand-coordinate-actions",
            "three-strand-aut-relations",
            "free-rank2-presentation",
            "three-strand-lifts-fix-center",
        ],
    );
}

#[test]
fn gate_09_fixed_subgroups_at_radius_eight() {
    gate(
        9,
        Some(300),
        "fixed subgroups at radius 8 have ranks two and one, and neither basis extends by conjugation",
        &[
            "fixed-subgroup-rank-two",
            "fixed-subgroup-rank-one",
            "fixed-subgroup-nonextension",
        ],
    );
}

#[test]
fn gate_10_center_inversion_and_relabeling_obstruction() {
    let records = gate(
        10,
        None,
        "the center inverts with exponent sums (n(n-1), -n(n-1)); no strand relabeling repairs the candidate map",
        &["full-twist-inversion", "theta0-obstruction"],
    );
    for r in records
        .iter()
        .filter(|r| r.claim_id == "full-twist-inversion")
    {
        let d = i64::from(r.n) * (i64::from(r.n) - 1);
        let pair = format!("({d}, {})", -d);
        let witness = r.witness.as_deref().unwrap_or("");
        assert!(
            witness.contains(&pair),
            "n={}: witness {witness:?} lacks the exponent pair {pair}",
            r.n
        );
    }
    let top = records
        .iter()
        .find(|r| r.claim_id == "theta0-obstruction" && r.n == 6)
        .expect("six-strand relabeling scan present");
    let witness = top.witness.as_deref().unwrap_or("");
    assert!(
        witness.contains("720 permutations"),
        "six-strand scan should cover all 720 relabelings, got {witness:?}"
    );
    assert!(
        top.elapsed_ms < 1000,
        "720-permutation scan took {}ms, expected under a second",
        top.elapsed_ms
    );
}

#[test]
fn gate_11_equality_deciders_agree_on_random_words() {
    let records = gate(
        11,
        None,
        "five hundred random band words: the combed decider always agrees with the strand action oracle",
        &["normal-form-vs-action-oracle"],
    );
    assert_eq!(
        records.len(),
        4,
        "expected one record per strand count 2..5"
    );
    for r in &records {
        let witness = r.witness.as_deref().unwrap_or("");
        assert!(
            witness.contains("125 pairs"),
            "n={}: witness {witness:?} does not report 125 decided pairs",
            r.n
        );
    }
}
