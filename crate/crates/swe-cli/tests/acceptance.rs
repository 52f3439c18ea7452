//! Acceptance gate for the workspace: seven tests, one per shipped
//! guarantee, each printing a single `ACCEPTANCE k: PASS/FAIL` line (with
//! per-check detail above it) so the gate can be read straight off the
//! test output.
//!
//! Reference numbers are quoted as printed by their source material;
//! comparisons that cannot be reproduced because the printed value itself
//! is defective fail honestly and say why.  Tolerances are pinned as
//! constants next to each criterion.

use std::path::{Path, PathBuf};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swe_cli::config::InitialData;
use swe_cli::fixtures::{
    table_fixture, test_fixture, TableKind, CALIBRATED_NORM, TABLE_IDS, TEST2_REFERENCE_L1,
    TEST3_REFERENCE_L1,
};
use swe_cli::l1::l1_error;
use swe_cli::report::parse_csv;
use swe_core::riemann::{
    classify, construct, construct_with_algorithm, sample, solve, ClassificationEvidence,
    ConstructionTag, GapProbe, RiemannSolution, SegmentAlgorithm, Uniqueness, WaveKind,
};
use swe_core::state::flux;
use swe_core::stationary_contact::{a_max, contact_roots, phi_cubic};
use swe_core::{Gravity, State};

const G: Gravity = Gravity(9.8);

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn out_dir(name: &str) -> PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&d).unwrap();
    d
}

/// Run the `swe test <number>` fixture through the real binary and hand
/// back the parsed CSV rows `(x, numeric, exact)` and the JSON summary.
fn run_fixture(
    number: u8,
    n: usize,
    prefer: Option<&str>,
    dir_name: &str,
) -> (Vec<(f64, State, State)>, serde_json::Value) {
    let dir = out_dir(dir_name);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_swe"));
    cmd.arg("test")
        .arg(number.to_string())
        .arg("--n")
        .arg(n.to_string())
        .arg("--out-dir")
        .arg(&dir);
    if let Some(p) = prefer {
        cmd.arg("--prefer").arg(p);
    }
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "fixture {number} (N = {n}, prefer {prefer:?}) exited with {:?}:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let label = format!("test{number}");
    let csv = std::fs::read_to_string(dir.join(format!("{label}.csv"))).unwrap();
    let json = std::fs::read_to_string(dir.join(format!("{label}.json"))).unwrap();
    (
        parse_csv(&csv).unwrap(),
        serde_json::from_str(&json).unwrap(),
    )
}

fn fixture_jump(number: u8) -> (State, State) {
    match test_fixture(number).unwrap().config.initial {
        InitialData::Jump { left, right, .. } => (left, right),
        InitialData::Profile(_) => unreachable!("built-in fixtures are jump data"),
    }
}

// ---------------------------------------------------------------------------
// 1. Equilibrium preservation
// ---------------------------------------------------------------------------

/// Largest admissible drift from the initial data after the full run.
const EQUILIBRIUM_TOL: f64 = 1e-12;

#[test]
fn criterion_1_equilibrium_preserved_exactly() {
    let (left, right) = fixture_jump(1);
    let (rows, _) = run_fixture(1, 500, None, "c1");
    assert_eq!(rows.len(), 500);
    let mut worst = 0.0_f64;
    for (x, num, _) in &rows {
        let want = if *x < 0.0 { left } else { right };
        worst = worst
            .max((num.h - want.h).abs())
            .max((num.u - want.u).abs())
            .max((num.a - want.a).abs());
    }
    let pass = worst <= EQUILIBRIUM_TOL;
    println!(
        "ACCEPTANCE 1: {} — equilibrium fixture drift after t = 0.1, N = 500: \
         max |cell - initial| = {worst:.3e} (tolerance {EQUILIBRIUM_TOL:.0e})",
        verdict(pass)
    );
    assert!(pass, "equilibrium drifted by {worst:.3e}");
}

// ---------------------------------------------------------------------------
// 2. Stationary-contact composition tables
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_composition_tables_match() {
    let mut all = true;
    for id in TABLE_IDS {
        let t = table_fixture(id).unwrap();
        let computed = compositions_of(&t);
        let mut dev = 0.0_f64;
        for (got, want) in computed.iter().zip(&t.reference) {
            dev = dev.max((got.0 - want.0).abs()).max((got.1 - want.1).abs());
        }
        let pass = dev <= t.tolerance;
        all &= pass;
        println!(
            "  table {id}: {} — max |computed - reference| = {dev:.3e} (tolerance {:.0e})",
            verdict(pass),
            t.tolerance
        );
    }
    println!(
        "ACCEPTANCE 2: {} — composition tables a1–a5 (1e-6) and b1–b3 (1e-9)",
        verdict(all)
    );
    assert!(all);
}

fn compositions_of(t: &swe_cli::fixtures::TableFixture) -> [(f64, f64); 2] {
    match t.kind {
        TableKind::FastEntry => {
            let c = swe_core::riemann::fast_entry_compositions(&t.left, t.a_right, G).unwrap();
            let sharp_o = c.partner_then_contact.unwrap();
            let o_sharp = c.contact_then_partner.unwrap();
            [(sharp_o.h, sharp_o.u), (o_sharp.h, o_sharp.u)]
        }
        TableKind::SlowEntry => {
            let c = swe_core::riemann::slow_entry_compositions(&t.left, t.a_right, G).unwrap();
            let down = c.sonic_then_contact.unwrap();
            let partner = c.drop_then_partner.unwrap();
            [(down.h, down.u), (partner.h, partner.u)]
        }
    }
}

// ---------------------------------------------------------------------------
// 3. Exact-solver intermediate states
// ---------------------------------------------------------------------------

/// States are printed to 7–8 digits in the sources.
const STATE_TOL: f64 = 1e-6;
/// The two fixture-5 curve gaps are printed to 15 digits.
const GAP_TOL: f64 = 1e-9;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check_state(name: &'static str, got: &State, want: (f64, f64)) -> Check {
    let dev = (got.h - want.0).abs().max((got.u - want.1).abs());
    Check {
        name,
        pass: dev <= STATE_TOL,
        detail: format!(
            "computed ({:.17e}, {:.17e}) vs reference ({}, {}), max dev {dev:.3e}",
            got.h, got.u, want.0, want.1
        ),
    }
}

fn check_value(name: &'static str, got: f64, want: f64, tol: f64) -> Check {
    let dev = (got - want).abs();
    Check {
        name,
        pass: dev <= tol,
        detail: format!("computed {got:.17e} vs reference {want}, dev {dev:.3e}"),
    }
}

fn fast_probes(evidence: &ClassificationEvidence) -> (GapProbe, GapProbe) {
    match evidence {
        ClassificationEvidence::FastEntry {
            contact_then_partner: Some(a),
            partner_then_contact: Some(b),
            ..
        } => (*a, *b),
        other => panic!("expected supercritical-entry evidence, got {other:?}"),
    }
}

fn slow_probes(evidence: &ClassificationEvidence) -> (GapProbe, GapProbe) {
    match evidence {
        ClassificationEvidence::SlowEntry {
            sonic_then_contact: Some(a),
            drop_then_partner: Some(b),
            ..
        } => (*a, *b),
        other => panic!("expected subcritical-entry evidence, got {other:?}"),
    }
}

#[test]
fn criterion_3_exact_solver_intermediates() {
    let mut checks: Vec<Check> = Vec::new();

    // Fixture 2: both intermediate states of the unique solution.
    let (l, r) = fixture_jump(2);
    let sol = solve(&l, &r, G, &[]).unwrap();
    checks.push(check_state(
        "test 2 state past the contact",
        &sol.states[1],
        (0.21815897, 2.750288),
    ));
    let mut c = check_state(
        "test 2 middle state",
        &sol.states[2],
        (0.35252714, 1.9572394),
    );
    if !c.pass {
        c.detail.push_str(
            "; the reference pair does not lie on the wave curves through its neighbours — the \
             jump it implies outruns the characteristics behind it (see the fixture note)",
        );
    }
    checks.push(c);

    // Fixture 3.
    let (l, r) = fixture_jump(3);
    let sol = solve(&l, &r, G, &[]).unwrap();
    checks.push(check_state(
        "test 3 middle state",
        &sol.states[1],
        (1.8452179, 0.67672469),
    ));
    checks.push(check_state(
        "test 3 state past the contact",
        &sol.states[2],
        (2.0496463, 0.60922927),
    ));

    // Fixture 4: states plus the printed screening heights.
    let (l, r) = fixture_jump(4);
    let sol = solve(&l, &r, G, &[]).unwrap();
    checks.push(check_state(
        "test 4 middle state",
        &sol.states[1],
        (1.5521168, 1.4328264),
    ));
    checks.push(check_state(
        "test 4 state past the contact",
        &sol.states[2],
        (1.665941, 1.3349296),
    ));
    let report = classify(&l, &r, G).unwrap();
    let (sonic_contact, drop_partner) = slow_probes(&report.evidence);
    let screening = [sonic_contact.state.h, drop_partner.state.h];
    let printed = [1.042865405801653, 1.213385283426733];
    let dev = screening
        .iter()
        .map(|h| {
            printed
                .iter()
                .map(|p| (h - p).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "test 4 screening heights",
        pass: dev <= STATE_TOL,
        detail: format!(
            "solver screening heights ({:.17e}, {:.17e}) vs reference ({}, {}), max dev \
             {dev:.3e}; the reference pair is not derivable from this data by any composition \
             of the solver's operators, and the solver reaches the same unique verdict from \
             its own pair (see the fixture note)",
            screening[0], screening[1], printed[0], printed[1]
        ),
    });

    // Fixture 5: states plus both printed curve gaps.
    let (l, r) = fixture_jump(5);
    let sol = solve(&l, &r, G, &[]).unwrap();
    checks.push(check_state(
        "test 5 state past the contact",
        &sol.states[1],
        (0.21591647, 3.7051366),
    ));
    checks.push(check_state(
        "test 5 middle state",
        &sol.states[2],
        (0.56185289, 1.7661913),
    ));
    let report = classify(&l, &r, G).unwrap();
    let (contact_partner, partner_contact) = fast_probes(&report.evidence);
    checks.push(check_value(
        "test 5 contact-then-partner gap",
        contact_partner.gap,
        -1.050411375011095,
        GAP_TOL,
    ));
    checks.push(check_value(
        "test 5 partner-then-contact gap",
        partner_contact.gap,
        -0.474326705580410,
        GAP_TOL,
    ));

    // Fixture 6: all three coexisting solutions.
    let (l, r) = fixture_jump(6);
    let report = classify(&l, &r, G).unwrap();
    assert_eq!(report.uniqueness, Uniqueness::MultipleThree);
    let by_tag = |tag: ConstructionTag| -> &RiemannSolution {
        report
            .solutions
            .iter()
            .find(|s| s.tag == tag)
            .unwrap_or_else(|| panic!("no {tag} solution"))
    };
    let a1 = by_tag(ConstructionTag::A1);
    checks.push(check_state(
        "test 6 first solution, state past the contact",
        &a1.states[1],
        (0.21984063, 4.5487497),
    ));
    checks.push(check_state(
        "test 6 first solution, middle state",
        &a1.states[2],
        (0.7964266, 1.4737915),
    ));
    let a2 = by_tag(ConstructionTag::A2);
    let mut c = check_state(
        "test 6 second solution, state at the right level",
        &a2.states[3],
        (0.75904946, 1.3174372),
    );
    if !c.pass {
        c.detail.push_str(
            "; the reference intermediates were generated against the discharge-consistent \
             right velocity 1.3174372042250062 rather than this fixture's 1.3410741 (see the \
             fixture note)",
        );
    }
    checks.push(c);
    let a3 = by_tag(ConstructionTag::A3);
    for (name, idx, want) in [
        (
            "test 6 third solution, middle state",
            1,
            (0.95328169, 0.89892673),
        ),
        (
            "test 6 third solution, state past the contact",
            2,
            (0.72279573, 1.1855776),
        ),
    ] {
        let mut c = check_state(name, &a3.states[idx], want);
        if !c.pass {
            c.detail
                .push_str("; same cause as the second solution (see the fixture note)");
        }
        checks.push(c);
    }

    // Fixture 7: the three intermediate states of the unique solution.
    let (l, r) = fixture_jump(7);
    let sol = solve(&l, &r, G, &[]).unwrap();
    checks.push(check_state(
        "test 7 critical state",
        &sol.states[1],
        (0.77374106, 2.7536634),
    ));
    checks.push(check_state(
        "test 7 state past the contact",
        &sol.states[2],
        (0.58589019, 3.636556),
    ));
    checks.push(check_state(
        "test 7 state past the second wave",
        &sol.states[3],
        (0.64142927, 3.4143821),
    ));

    let failures: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    for c in &checks {
        println!("  {}: {} — {}", c.name, verdict(c.pass), c.detail);
    }
    println!(
        "ACCEPTANCE 3: {} — {}/{} intermediate-state checks match their printed references",
        verdict(failures.is_empty()),
        checks.len() - failures.len(),
        checks.len()
    );
    assert!(
        failures.is_empty(),
        "{} reference comparisons fail: {}.  Each failing reference value is internally \
         inconsistent with its own problem data (detail above); the solver's values are \
         cross-checked against an independent high-precision evaluation in the unit suites.",
        failures.len(),
        failures
            .iter()
            .map(|c| c.name)
            .collect::<Vec<_>>()
            .join(", ")
    );
}

// ---------------------------------------------------------------------------
// 4. Convergence tables
// ---------------------------------------------------------------------------

/// Fraction of the reference value the measured error may deviate by.
const L1_BAND: f64 = 0.30;

#[test]
fn criterion_4_convergence_tables() {
    let mut band_failures = Vec::new();
    let mut monotone = true;
    for (number, refs) in [(2u8, TEST2_REFERENCE_L1), (3u8, TEST3_REFERENCE_L1)] {
        let mut errs = Vec::new();
        for (n, reference) in refs {
            let (_, json) = run_fixture(number, n, None, &format!("c4_t{number}_n{n}"));
            let l1 = json["l1_error"].as_f64().unwrap();
            let ratio = l1 / reference;
            let in_band = (1.0 - L1_BAND..=1.0 + L1_BAND).contains(&ratio);
            println!(
                "  test {number} N = {n}: {} — l1 = {l1:.6e}, reference {reference}, ratio \
                 {ratio:.3}",
                verdict(in_band)
            );
            if !in_band {
                band_failures.push(format!("test {number} N = {n} (ratio {ratio:.3})"));
            }
            errs.push(l1);
        }
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        monotone &= decreasing;
        println!(
            "  test {number} strict decrease over N: {}",
            verdict(decreasing)
        );
    }
    let pass = band_failures.is_empty() && monotone;
    println!(
        "ACCEPTANCE 4: {} — L1 errors within ±{:.0}% of the reference tables and strictly \
         decreasing",
        verdict(pass),
        L1_BAND * 100.0
    );
    assert!(monotone, "L1 errors do not decrease strictly in N");
    assert!(
        band_failures.is_empty(),
        "{} rows fall outside the ±30% band: {}.  The test 2 reference table was measured \
         against a reference profile whose middle state is off the wave curves (re-measuring \
         these runs against that profile lands all rows within 26% and floors at the 0.0065441 \
         separation between the profiles), and the test 3 N = 500 reference is inconsistent \
         with its own table's decay rate; see fixtures::CALIBRATION_NOTE and the decision \
         record.  Errors here are measured against the true exact solution and are smaller \
         than the references.",
        band_failures.len(),
        band_failures.join(", ")
    );
}

// ---------------------------------------------------------------------------
// 5. Preference follows its own solution
// ---------------------------------------------------------------------------

/// The third-preference run must sit at least this factor above the
/// first-preference error.
const DIVERGENCE_FACTOR: f64 = 5.0;

#[test]
fn criterion_5_preference_follows_its_own_solution() {
    let (l, r) = fixture_jump(6);
    let report = classify(&l, &r, G).unwrap();
    assert_eq!(report.uniqueness, Uniqueness::MultipleThree);
    let tags = [ConstructionTag::A1, ConstructionTag::A2, ConstructionTag::A3];
    let exact_of = |tag: ConstructionTag, xs: &[f64]| -> Vec<State> {
        let sol = report.solutions.iter().find(|s| s.tag == tag).unwrap();
        xs.iter().map(|x| sample(sol, x / 0.1, G)).collect()
    };
    let n = 500;
    let dx = 2.0 / n as f64;
    let mut d = [[0.0_f64; 3]; 3];
    for (i, prefer) in ["a1", "a2", "a3"].iter().enumerate() {
        let (rows, _) = run_fixture(6, n, Some(prefer), &format!("c5_{prefer}"));
        let xs: Vec<f64> = rows.iter().map(|(x, _, _)| *x).collect();
        let numeric: Vec<State> = rows.iter().map(|(_, s, _)| *s).collect();
        for (j, tag) in tags.iter().enumerate() {
            let exact = exact_of(*tag, &xs);
            d[i][j] = l1_error(&numeric, &exact, dx, &CALIBRATED_NORM).unwrap();
        }
        println!(
            "  run preferring {}: distance to exact A1 = {:.6e}, A2 = {:.6e}, A3 = {:.6e}",
            prefer.to_uppercase(),
            d[i][0],
            d[i][1],
            d[i][2]
        );
    }
    let a1_tracks = d[0][0] < d[0][1] && d[0][0] < d[0][2];
    let a2_tracks = d[1][1] < d[1][0] && d[1][1] < d[1][2];
    let a3_diverges = d[2][2] > DIVERGENCE_FACTOR * d[0][0];
    let mut a3_sequence = vec![d[2][2]];
    for n in [1000usize, 2000] {
        let (_, json) = run_fixture(6, n, Some("a3"), &format!("c5_a3_n{n}"));
        a3_sequence.push(json["l1_error"].as_f64().unwrap());
    }
    println!(
        "  A3-preferring error against its own exact solution at N = 500/1000/2000: \
         {:.6e} / {:.6e} / {:.6e}",
        a3_sequence[0], a3_sequence[1], a3_sequence[2]
    );
    let pass = a1_tracks && a2_tracks && a3_diverges;
    println!(
        "ACCEPTANCE 5: {} — A1/A2-preferring runs are closest to their own solutions \
         ({}, {}); the A3-preferring run must miss its target by more than \
         {DIVERGENCE_FACTOR}x the A1 error but measures {:.6e} vs {:.6e}",
        verdict(pass),
        verdict(a1_tracks),
        verdict(a2_tracks),
        d[2][2],
        d[0][0]
    );
    assert!(
        a3_diverges,
        "the A3-preferring run is required NOT to converge to its own solution (error > \
         {DIVERGENCE_FACTOR}x the A1-preferring error, i.e. > {:.3e}), but it tracks it: \
         errors {:.3e}/{:.3e}/{:.3e} at N = 500/1000/2000, decreasing with resolution, \
         and its only pointwise deviation is the usual transition cell inside the \
         left-moving shock.  The scheme implemented here matches the reference scheme's \
         update rule and interface trace states operator for operator, and the interface \
         solver re-selects the same construction for the perturbed traces at later steps, \
         so the selected wave structure is self-sustaining; the reported divergence for \
         this preference is not reproducible from the documented scheme.  See the decision \
         record.",
        DIVERGENCE_FACTOR * d[0][0],
        a3_sequence[0],
        a3_sequence[1],
        a3_sequence[2]
    );
    assert!(pass);
}

// ---------------------------------------------------------------------------
// 6. Non-convergence on critical-entry data
// ---------------------------------------------------------------------------

/// The critical-entry error must exceed this multiple of the comparable
/// convergent run's error.
const RESONANCE_FACTOR: f64 = 10.0;

#[test]
fn criterion_6_critical_entry_does_not_converge() {
    let mut e7 = Vec::new();
    for n in [500usize, 1000, 2000] {
        let (_, json) = run_fixture(7, n, None, &format!("c6_t7_n{n}"));
        e7.push(json["l1_error"].as_f64().unwrap());
    }
    let (_, json4) = run_fixture(4, 500, None, "c6_t4");
    let e4 = json4["l1_error"].as_f64().unwrap();
    println!(
        "  critical-entry fixture error at N = 500/1000/2000: {:.6e} / {:.6e} / {:.6e}",
        e7[0], e7[1], e7[2]
    );
    let pass = e7[0] > RESONANCE_FACTOR * e4;
    println!(
        "ACCEPTANCE 6: {} — critical-entry fixture error {:.6e} vs convergent fixture error \
         {e4:.6e} at N = 500 (ratio {:.2}, required > {RESONANCE_FACTOR})",
        verdict(pass),
        e7[0],
        e7[0] / e4
    );
    assert!(
        pass,
        "the critical-entry run is required to miss the exact solution by more than \
         {RESONANCE_FACTOR}x the convergent fixture's error ({:.3e}), but it tracks it: \
         errors {:.3e}/{:.3e}/{:.3e} at N = 500/1000/2000, decreasing with resolution, \
         with no persistent pointwise defect (the largest deviation is ordinary smearing \
         at the trailing fan corner and it also shrinks).  The interface solver re-selects \
         the same critical-entry construction for the perturbed traces at every step — the \
         sonic state and its supercritical contact image are re-emitted at the interface — \
         so the structure is self-sustaining under the documented update rule; the \
         reported divergence for this data is not reproducible from it.  See the decision \
         record.",
        RESONANCE_FACTOR * e4,
        e7[0],
        e7[1],
        e7[2]
    );
}

// ---------------------------------------------------------------------------
// 7. Randomized property sweeps
// ---------------------------------------------------------------------------

/// Inputs per sweep.
const SWEEP: usize = 10_000;
/// Jump-condition and contact-relation residual bound (scaled).
const RESIDUAL_TOL: f64 = 1e-9;
/// Middle-state agreement bound for the two segment search strategies.
const AGREEMENT_TOL: f64 = 1e-9;
/// Root agreement bound against the sign-scan oracle.
const SCAN_TOL: f64 = 1e-6;

fn random_state(rng: &mut ChaCha8Rng) -> State {
    State::new(
        rng.gen_range(0.05..3.0),
        rng.gen_range(-6.0..6.0),
        rng.gen_range(0.0..1.5),
    )
}

/// Both jump conditions of a shock, scaled as in the solution screens.
fn shock_residual(left: &State, right: &State, speed: f64) -> f64 {
    let scale = 1.0_f64
        .max(left.u.abs())
        .max(right.u.abs())
        .max(left.h)
        .max(right.h);
    let dm = right.discharge() - left.discharge() - speed * (right.h - left.h);
    let fl = flux(left, G);
    let fr = flux(right, G);
    let dp = fr[1] - fl[1] - speed * (right.discharge() - left.discharge());
    (dm.abs() / scale).max(dp.abs() / (scale * scale))
}

/// Discharge and energy-level mismatch across a stationary contact, scaled.
fn contact_residual(left: &State, right: &State) -> f64 {
    let scale = 1.0_f64
        .max(left.u.abs())
        .max(right.u.abs())
        .max(left.h)
        .max(right.h);
    let dq = right.discharge() - left.discharge();
    let bern = |s: &State| 0.5 * s.u * s.u + G.0 * (s.h + s.a);
    let db = bern(right) - bern(left);
    (dq.abs() / scale).max(db.abs() / (scale * scale))
}

fn sweep_emitted_shocks() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0001);
    let mut worst = 0.0_f64;
    let mut shocks = 0usize;
    for _ in 0..SWEEP {
        let l = random_state(&mut rng);
        let r = random_state(&mut rng);
        let Ok(sol) = solve(&l, &r, G, &[]) else {
            continue;
        };
        for w in &sol.waves {
            if let WaveKind::Shock { speed } = w.kind {
                shocks += 1;
                worst = worst.max(shock_residual(&w.left, &w.right, speed));
            }
        }
    }
    (
        worst <= RESIDUAL_TOL,
        format!("jump-condition residual of {shocks} emitted shocks: worst {worst:.3e}"),
    )
}

fn sweep_emitted_contacts() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0002);
    let mut worst = 0.0_f64;
    let mut contacts = 0usize;
    for _ in 0..SWEEP {
        let l = random_state(&mut rng);
        let r = random_state(&mut rng);
        let Ok(sol) = solve(&l, &r, G, &[]) else {
            continue;
        };
        for w in &sol.waves {
            if w.kind == WaveKind::StationaryContact {
                contacts += 1;
                worst = worst.max(contact_residual(&w.left, &w.right));
            }
        }
    }
    (
        worst <= RESIDUAL_TOL,
        format!("contact-relation residual of {contacts} emitted contacts: worst {worst:.3e}"),
    )
}

fn sweep_root_ordering() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0003);
    let mut hits = 0usize;
    let mut ok = true;
    for _ in 0..SWEEP {
        let s0 = State::new(
            rng.gen_range(0.05..3.0),
            rng.gen_range(-6.0..6.0),
            rng.gen_range(-0.5..0.5),
        );
        let a = s0.a + rng.gen_range(-1.0..1.0);
        if let Some(r) = contact_roots(&s0, a, G).unwrap() {
            hits += 1;
            let slack = 1e-9 * 1.0_f64.max(r.h2);
            ok &= 0.0 <= r.h1
                && r.h1 <= r.h_min + slack
                && r.h_min <= r.h_star + slack
                && r.h_star <= r.h2 + slack;
        }
    }
    (
        ok,
        format!("root ordering h1 <= h_min <= h_star <= h2 on {hits} root pairs"),
    )
}

fn sweep_reach_limit_bound() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0004);
    let mut worst = f64::INFINITY;
    let mut ok = true;
    for _ in 0..SWEEP {
        let s0 = random_state(&mut rng);
        let margin = a_max(&s0, G) - s0.a;
        ok &= margin >= 0.0;
        worst = worst.min(margin);
    }
    (
        ok,
        format!("reachability limit stays at or above the base level: min margin {worst:.3e}"),
    )
}

/// Independent root oracle: scan the contact cubic for sign changes and
/// bisect each bracket.  The scan grid mixes a log scale (catching roots
/// far below 1) with a uniform scale up to an analytic positivity bound.
fn scanned_roots(s0: &State, a: f64) -> Vec<f64> {
    let c2 = 2.0 * G.0 * (a - s0.a - s0.h) - s0.u * s0.u;
    let hi = 1.0_f64.max(-c2 / G.0) + 1.0;
    let mut grid: Vec<f64> = (0..600)
        .map(|i| 1e-9 * (hi / 1e-9).powf(i as f64 / 599.0))
        .collect();
    grid.extend((1..=1400).map(|i| hi * i as f64 / 1400.0));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (phi_cubic(s0, a, lo, G), phi_cubic(s0, a, hi, G));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo * fhi >= 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phi_cubic(s0, a, mid, G) * flo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi.max(1.0) {
                break;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

fn sweep_roots_vs_sign_scan() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0005);
    let mut checked = 0usize;
    let mut worst = 0.0_f64;
    let mut ok = true;
    for _ in 0..SWEEP {
        let s0 = State::new(
            rng.gen_range(0.05..3.0),
            rng.gen_range(-6.0..6.0),
            rng.gen_range(-0.5..0.5),
        );
        let a = s0.a + rng.gen_range(-1.0..1.0);
        // The tangency case collapses both roots and defeats a sign scan;
        // it has its own deterministic tests.
        if (a - a_max(&s0, G)).abs() < 1e-6 {
            continue;
        }
        let roots = contact_roots(&s0, a, G).unwrap();
        let scanned = scanned_roots(&s0, a);
        match roots {
            None => ok &= scanned.is_empty(),
            Some(r) => {
                checked += 1;
                if scanned.len() != 2 {
                    ok = false;
                    continue;
                }
                let dev = (scanned[0] - r.h1).abs().max((scanned[1] - r.h2).abs());
                worst = worst.max(dev);
                ok &= dev <= SCAN_TOL;
            }
        }
    }
    (
        ok,
        format!("roots vs sign-scan oracle on {checked} root pairs: worst dev {worst:.3e}"),
    )
}

fn sweep_segment_algorithms_agree() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0006);
    let mut both = 0usize;
    let mut worst = 0.0_f64;
    for _ in 0..SWEEP {
        let al = rng.gen_range(0.5..1.5);
        let left = State::new(
            rng.gen_range(0.1..2.0),
            rng.gen_range(-3.0..6.0),
            al,
        );
        let right = State::new(
            rng.gen_range(0.1..2.5),
            rng.gen_range(-2.0..3.0),
            (al + rng.gen_range(-0.4..0.4)).max(0.0),
        );
        let on_curve = construct_with_algorithm(
            ConstructionTag::A3,
            &left,
            &right,
            G,
            SegmentAlgorithm::BisectOnCurve,
        );
        let Ok(Some(s1)) = on_curve else { continue };
        if s1.waves.is_empty() {
            continue;
        }
        let on_level = construct_with_algorithm(
            ConstructionTag::A3,
            &left,
            &right,
            G,
            SegmentAlgorithm::BisectOnLevel,
        );
        if let Ok(Some(s2)) = on_level {
            both += 1;
            let scale = 1.0_f64.max(s1.states[1].h);
            worst = worst.max((s1.states[1].h - s2.states[1].h).abs() / scale);
        }
    }
    (
        worst <= AGREEMENT_TOL && both > 0,
        format!("segment search strategies agree on {both} middle states: worst dev {worst:.3e}"),
    )
}

fn sweep_triple_verdicts_constructible() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_0007);
    let mut triples = 0usize;
    let mut ok = true;
    for _ in 0..SWEEP {
        let h = rng.gen_range(0.1..1.2);
        let left = State::new(
            h,
            rng.gen_range(0.8..2.0) * (G.0 * h).sqrt(),
            rng.gen_range(0.6..1.4),
        );
        let right = State::new(
            rng.gen_range(0.2..1.5),
            rng.gen_range(0.0..3.0),
            left.a + rng.gen_range(0.0..0.35),
        );
        let Ok(report) = classify(&left, &right, G) else {
            continue;
        };
        if report.uniqueness != Uniqueness::MultipleThree {
            continue;
        }
        triples += 1;
        ok &= report.solutions.len() == 3;
        let mut tags: Vec<ConstructionTag> = report.solutions.iter().map(|s| s.tag).collect();
        tags.dedup();
        ok &= tags.len() == 3;
        for tag in tags {
            ok &= matches!(construct(tag, &left, &right, G), Ok(Some(_)));
        }
    }
    (
        ok && triples > 0,
        format!("every one of {triples} three-solution verdicts carries three constructible patterns"),
    )
}

#[test]
fn criterion_7_randomized_property_sweeps() {
    let sweeps: [(&str, fn() -> (bool, String)); 7] = [
        ("emitted shocks", sweep_emitted_shocks),
        ("emitted contacts", sweep_emitted_contacts),
        ("root ordering", sweep_root_ordering),
        ("reach limit", sweep_reach_limit_bound),
        ("sign-scan oracle", sweep_roots_vs_sign_scan),
        ("segment strategies", sweep_segment_algorithms_agree),
        ("triple verdicts", sweep_triple_verdicts_constructible),
    ];
    let mut all = true;
    for (name, sweep) in sweeps {
        let (pass, detail) = sweep();
        all &= pass;
        println!("  {name}: {} — {detail}", verdict(pass));
    }
    println!(
        "ACCEPTANCE 7: {} — seven property sweeps over {SWEEP} randomized inputs each",
        verdict(all)
    );
    assert!(all);
}
