//! Built-in problems and the frozen reference numbers they are checked
//! against.
//!
//! The seven simulation fixtures exercise every regime of the solver:
//! exact equilibrium (1), classical convergent runs (2, 3), resonant data
//! with a unique solution (4, 5), resonant data with three coexisting
//! solutions (6), and critical-entry data on which the scheme fails to
//! converge by design (7).  The eight table fixtures pin the
//! stationary-contact composition operators on isolated states.

use swe_core::State;

use crate::config::{InitialData, OutputPaths, ProblemConfig};
use crate::l1::{Components, ErrorNorm};

/// The error norm used for every reported number, frozen after a one-time
/// calibration against [`TEST2_REFERENCE_L1`] and [`TEST3_REFERENCE_L1`]
/// (see the manifest note on [`CALIBRATION_NOTE`]).
pub const CALIBRATED_NORM: ErrorNorm = ErrorNorm {
    components: Components::HeightVelocity,
    weighted: true,
};

/// How [`CALIBRATED_NORM`] was chosen, kept with the fixtures so the choice
/// is auditable.
pub const CALIBRATION_NOTE: &str = "The reference convergence tables do not state which components \
     enter the L1 norm.  Candidate compositions (height only; height + velocity; height + \
     discharge; each with and without dx weighting) were evaluated once on the test 2 and test 3 \
     fixtures at N = 500/1000/2000 against the solver's exact solution.  Observed dx-weighted \
     height + velocity errors: test 2 [0.0067287, 0.0041824, 0.0024432], test 3 [0.011083, \
     0.0060556, 0.0036893], both strictly decreasing at first order.  The reference tables list \
     larger values; re-measuring the test 2 runs against a profile built from the reference's \
     off-curve middle state (see the test 2 fixture note) reproduces its table to within 26% \
     [0.011273, 0.0079978, 0.0080334 vs 0.012644, 0.0087928, 0.0063773] and floors at the \
     0.0065441 separation between the two exact profiles, which identifies the reference \
     composition as dx-weighted height + velocity and the remaining gap as an artifact of that \
     reference profile rather than of the norm.  The test 3 reference drops faster than first \
     order between N = 500 and 1000 (factor 2.37); its N = 500 row is not reproduced by any \
     candidate.  Frozen choice: height + velocity, dx-weighted.  The flags remain available for \
     experiments but reported numbers always cite the active norm.";

/// Reference L1 errors for the test 2 fixture at N = 500, 1000, 2000.
pub const TEST2_REFERENCE_L1: [(usize, f64); 3] =
    [(500, 0.012644), (1000, 0.0087928), (2000, 0.0063773)];

/// Reference L1 errors for the test 3 fixture at N = 500, 1000, 2000.
pub const TEST3_REFERENCE_L1: [(usize, f64); 3] =
    [(500, 0.01813), (1000, 0.0076434), (2000, 0.0035277)];

/// One built-in simulation problem.
#[derive(Debug, Clone)]
pub struct TestFixture {
    pub number: u8,
    pub title: &'static str,
    /// Caveats about the bundled reference values, if any.
    pub note: Option<&'static str>,
    pub config: ProblemConfig,
}

pub const TEST_NUMBERS: [u8; 7] = [1, 2, 3, 4, 5, 6, 7];

fn base_config(left: State, right: State, t_end: f64) -> ProblemConfig {
    ProblemConfig {
        initial: InitialData::Jump {
            left,
            right,
            split_x: 0.0,
        },
        x0: -1.0,
        x1: 1.0,
        n: 500,
        t_end,
        cfl: 0.75,
        g: 9.8,
        preference: Vec::new(),
        norm: CALIBRATED_NORM,
        output: OutputPaths::default(),
    }
}

/// The built-in simulation fixture with the given number (1–7).
pub fn test_fixture(number: u8) -> Option<TestFixture> {
    let f = match number {
        1 => TestFixture {
            number,
            title: "equilibrium contact is preserved exactly",
            note: Some(
                "The two states are joined by an exact stationary contact; the final grid must \
                 equal the initial grid to machine precision in every cell.",
            ),
            config: base_config(
                State::new(1.0, 5.0, 1.0),
                State::new(1.223655890827479, 4.086116070277590, 1.2),
                0.1,
            ),
        },
        2 => TestFixture {
            number,
            title: "supercritical data on both sides of a bottom drop",
            note: Some(
                "The bundled reference middle state (0.35252714, 1.9572394) does not lie on the \
                 true wave curves: the jump it implies travels faster than the characteristics \
                 behind it.  The solver's middle state is (0.35091320252206289, \
                 1.9490829264985433); the first intermediate state matches the reference.",
            ),
            config: base_config(
                State::new(0.3, 2.0, 1.1),
                State::new(0.4, 2.2, 1.0),
                0.1,
            ),
        },
        3 => TestFixture {
            number,
            title: "subcritical data on both sides of a bottom drop",
            note: None,
            config: base_config(
                State::new(1.0, 3.0, 1.2),
                State::new(2.0, 0.5, 1.0),
                0.1,
            ),
        },
        4 => TestFixture {
            number,
            title: "resonant data across a drop with a unique solution",
            note: Some(
                "The bundled screening heights 1.042865405801653 and 1.213385283426733 could not \
                 be reproduced from this data by any composition of the solver's operators.  The \
                 solver's own screening gives sonic-then-contact height 1.2764333392766531 > \
                 partner height 1.2245913521958831 and the same uniqueness verdict; the \
                 intermediate states match the reference.",
            ),
            config: base_config(
                State::new(1.0, 3.0, 1.1),
                State::new(1.2, 0.1, 1.0),
                0.1,
            ),
        },
        5 => TestFixture {
            number,
            title: "resonant data across a rise with a unique solution",
            note: None,
            config: base_config(
                State::new(0.2, 4.0, 1.0),
                State::new(0.5, 1.5, 1.1),
                0.1,
            ),
        },
        6 => TestFixture {
            number,
            title: "resonant data with three coexisting solutions",
            note: Some(
                "Three constructions coexist; rerun with --prefer a2 or --prefer a3 to follow \
                 the other two.  The bundled A2/A3 reference intermediates were generated against \
                 the discharge-consistent right velocity 1.3174372042250062 (= h_L u_L / h_R) \
                 rather than this fixture's 1.3410741; with the fixture data as given, the \
                 solver's A2 balancing level is 1.0880791369126229 and its A3 middle states are \
                 (0.95152127058802285, 0.90785465117119178) / (0.72016280527562008, \
                 1.1995107284956898).",
            ),
            config: base_config(
                State::new(0.2, 5.0, 1.0),
                State::new(0.75904946, 1.3410741, 1.2),
                0.1,
            ),
        },
        7 => TestFixture {
            number,
            title: "critical-entry data: the scheme does not converge",
            note: Some(
                "The unique exact solution carries a stationary contact between critical states; \
                 the approximate solutions stay bounded away from it at any resolution.",
            ),
            config: base_config(
                State::new(1.0, 2.0, 1.1),
                State::new(0.8, 4.0, 1.0),
                0.03,
            ),
        },
        _ => return None,
    };
    Some(f)
}

/// Which composition pair a table fixture pins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// Supercritical entry: partner-then-contact and contact-then-partner
    /// states.
    FastEntry,
    /// Subcritical entry: sonic-then-contact and drop-then-partner states.
    SlowEntry,
}

/// One stationary-contact composition fixture: a left state, a far bottom
/// level, and the two reference `(h, u)` results.
#[derive(Debug, Clone)]
pub struct TableFixture {
    pub id: &'static str,
    pub left: State,
    pub a_right: f64,
    pub kind: TableKind,
    /// For [`TableKind::FastEntry`]: `[partner_then_contact,
    /// contact_then_partner]`; for [`TableKind::SlowEntry`]:
    /// `[sonic_then_contact, drop_then_partner]`.
    pub reference: [(f64, f64); 2],
    /// Absolute tolerance the computed values must meet (set by how many
    /// digits the reference carries).
    pub tolerance: f64,
    pub note: Option<&'static str>,
}

pub const TABLE_IDS: [&str; 8] = ["a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3"];

/// The built-in composition fixture with the given id (`a1`–`a5`,
/// `b1`–`b3`, case-insensitive).
pub fn table_fixture(id: &str) -> Option<TableFixture> {
    let f = match id.to_ascii_lowercase().as_str() {
        "a1" => TableFixture {
            id: "a1",
            left: State::new(0.5, 4.0, 1.0),
            a_right: 0.9,
            kind: TableKind::FastEntry,
            reference: [(1.1930011, 1.6764444), (1.1171275, 1.790306)],
            tolerance: 1e-6,
            note: None,
        },
        "a2" => TableFixture {
            id: "a2",
            left: State::new(1.0, 3.1304952, 1.0),
            a_right: 0.9,
            kind: TableKind::FastEntry,
            reference: [(1.3075478, 2.3941726), (1.2558035, 2.4928225)],
            tolerance: 1e-6,
            note: Some("The left state sits on the critical curve (velocity equals wave speed)."),
        },
        "a3" => TableFixture {
            id: "a3",
            left: State::new(0.01, 10.0, 1.0),
            a_right: 0.9,
            kind: TableKind::FastEntry,
            reference: [(0.54763636, 0.18260292), (0.44902891, 0.22270281)],
            tolerance: 1e-6,
            note: None,
        },
        "a4" => TableFixture {
            id: "a4",
            left: State::new(0.5, 4.0, 0.9),
            a_right: 1.0,
            kind: TableKind::FastEntry,
            reference: [(0.86127059, 2.3221506), (0.96534766, 2.0717925)],
            tolerance: 1e-6,
            note: None,
        },
        "a5" => TableFixture {
            id: "a5",
            left: State::new(0.1, 10.0, 0.9),
            a_right: 1.0,
            kind: TableKind::FastEntry,
            reference: [(1.2748668, 0.78439566), (1.3718425, 0.72894668)],
            tolerance: 1e-6,
            note: Some(
                "Input depth corrected from the source row's 0.01 to 0.1: both reference outputs \
                 carry a discharge of 1.0, and the composition operators preserve discharge \
                 exactly, so the listed 0.01 (discharge 0.1) cannot produce them.  With 0.1 both \
                 outputs are reproduced to all printed digits.",
            ),
        },
        "b1" => TableFixture {
            id: "b1",
            left: State::new(3.0, 0.5, 1.1),
            a_right: 1.0,
            kind: TableKind::SlowEntry,
            reference: [
                (1.819500899801235, 3.032474262659020),
                (1.768961248574716, 3.119112786658156),
            ],
            tolerance: 1e-9,
            note: None,
        },
        "b2" => TableFixture {
            id: "b2",
            left: State::new(3.0, 0.1, 1.1),
            a_right: 1.0,
            kind: TableKind::SlowEntry,
            reference: [
                (1.707571536932233, 2.901359698616083),
                (1.656818524474798, 2.990236508448978),
            ],
            tolerance: 1e-9,
            note: None,
        },
        "b3" => TableFixture {
            id: "b3",
            left: State::new(3.0, 1.0, 2.0),
            a_right: 1.0,
            kind: TableKind::SlowEntry,
            reference: [
                (3.187878980786353, 1.969891931767155),
                (2.574902018055705, 2.438841182952260),
            ],
            tolerance: 1e-9,
            note: None,
        },
        _ => return None,
    };
    Some(f)
}
