//! Cross-validation suites over all engines.
//!
//! [`run`] executes every identity, agreement, and oracle check at the
//! requested scale and reports one named result per suite, with the first
//! counterexample (indices and values) when a suite fails. A [`Fault`] can
//! be injected to corrupt one engine on purpose; a correct build passes
//! everything, a faulted one must produce a named failure.

use num::{BigInt, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hitting::{self, HittingQuery};
use crate::linalg::{ExactMatrix, Rational};
use crate::montecarlo::{simulate, WalkConfig};
use crate::sequences::SeqTable;
use crate::trees::{self, Direction, ENUMERATION_MAX};
use crate::wheel::{folded_matrix, reduced_matrix, DirectedWheel, VertexId};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A deliberate corruption of one engine, for mutation smoke tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of one off-diagonal entry of the folded matrix used
    /// by the inverse-identity suite.
    FoldedSignFlip,
    /// Adds 1 to every closed-form hitting time in the agreement suite.
    ClosedFormOffByOne,
}

impl std::fmt::Display for Fault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fault::FoldedSignFlip => write!(f, "folded-sign-flip"),
            Fault::ClosedFormOffByOne => write!(f, "closed-form-off-by-one"),
        }
    }
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "folded-sign-flip" => Ok(Fault::FoldedSignFlip),
            "closed-form-off-by-one" => Ok(Fault::ClosedFormOffByOne),
            other => Err(Error::domain(format!("unknown fault {other:?}"))),
        }
    }
}

/// Scale knobs for one verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Upper cycle size for the exact sweeps; at least 3.
    pub n_max: usize,
    /// Upper cycle size for brute-force enumeration; 3..=10.
    pub enum_max: usize,
    /// Samples per Monte Carlo consistency case.
    pub mc_samples: u64,
    /// Base seed for the stochastic suites.
    pub seed: u64,
    /// Optional seeded corruption.
    pub fault: Option<Fault>,
}

/// Outcome of one named suite.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub range: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// All suite outcomes of one run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Name of the first failed suite, if any.
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Runs every suite and collects the report.
pub fn run(options: &VerifyOptions) -> Result<VerifyReport> {
    if options.n_max < 3 {
        return Err(Error::domain(format!(
            "n_max must be at least 3, got {}",
            options.n_max
        )));
    }
    if options.enum_max < 3 {
        return Err(Error::domain(format!(
            "enum_max must be at least 3, got {}",
            options.enum_max
        )));
    }
    if options.enum_max > ENUMERATION_MAX {
        return Err(Error::ScaleExceeded {
            n: options.enum_max,
            max: ENUMERATION_MAX,
        });
    }
    if options.mc_samples == 0 {
        return Err(Error::domain("mc_samples must be positive".to_string()));
    }

    let n_max = options.n_max;
    let mut checks = Vec::new();
    let mut push = |name: &str, range: String, violation: Option<String>| {
        checks.push(CheckResult {
            name: name.to_string(),
            range,
            passed: violation.is_none(),
            counterexample: violation,
        });
    };

    push("fib-recurrence", "i in 0..=500".into(), check_fib_recurrence());
    push("lucas-recurrence", "i in 0..=500".into(), check_lucas_recurrence());
    push("lucas-fib-bridge", "i in 1..=500".into(), check_lucas_fib_bridge());
    push("fib-three-term", "n in 1..=250".into(), check_fib_three_term());
    push("lucas-three-term", "n in 1..=250".into(), check_lucas_three_term());
    push("fib-addition", "n, m in 1..=200".into(), check_fib_addition());
    push("fib-even-sum", "l in 1..=250".into(), check_fib_even_sum());
    push("fib-odd-sum", "0 <= l < n <= 250".into(), check_fib_odd_sum());

    push(
        "reduced-matches-laplacian",
        format!("N in 3..={n_max}"),
        sweep(n_max, check_reduced_matches_laplacian),
    );
    push(
        "fold-symmetry",
        format!("N in 3..={n_max}"),
        sweep(n_max, check_fold_symmetry),
    );
    push(
        "inverse-identity",
        format!("N in 3..={n_max}"),
        sweep(n_max, |n| check_inverse_identity(n, options.fault)),
    );
    push(
        "four-way-agreement",
        format!("N in 3..={n_max}"),
        sweep(n_max, |n| check_four_way_agreement(n, options.fault)),
    );
    push(
        "hitting-bound",
        format!("N in 3..={n_max}"),
        sweep(n_max, check_hitting_bound),
    );
    push(
        "fold-monotonicity",
        format!("N in 3..={n_max}"),
        sweep(n_max, check_fold_monotonicity),
    );
    push(
        "in-trees-closed-form",
        format!("N in 3..={n_max}"),
        sweep(n_max, check_in_trees_closed_form),
    );
    push(
        "out-trees-closed-form",
        format!("N in 3..={n_max}"),
        sweep(n_max, check_out_trees_closed_form),
    );
    push(
        "enumeration-matches-cofactor",
        format!("N in 3..={}", options.enum_max),
        sweep(options.enum_max, check_enumeration_matches_cofactor),
    );
    push(
        "weighted-matrix-tree",
        "N in 3..=5, 20 weightings".into(),
        check_weighted_matrix_tree(options.seed),
    );
    push(
        "monte-carlo-4sigma",
        "(N, l) in {(3,1), (4,2), (5,2), (8,3)}".into(),
        check_monte_carlo(options.mc_samples, options.seed),
    );

    Ok(VerifyReport { checks })
}

/// Applies `f` to every `N` in `3..=n_max` and returns the violation with
/// the smallest `N`, if any.
fn sweep<F>(n_max: usize, f: F) -> Option<String>
where
    F: Fn(usize) -> Option<String> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (3..=n_max).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (3..=n_max).find_map(f)
    }
}

fn check_fib_recurrence() -> Option<String> {
    let t = SeqTable::up_to(502);
    (0..=500u64).find_map(|i| {
        let want = t.fib(i + 1) + t.fib(i);
        (t.fib(i + 2) != &want).then(|| format!("i={i}: F_{} = {} but F_{} + F_{} = {want}", i + 2, t.fib(i + 2), i + 1, i))
    })
}

fn check_lucas_recurrence() -> Option<String> {
    let t = SeqTable::up_to(502);
    (0..=500u64).find_map(|i| {
        let want = t.lucas(i + 1) + t.lucas(i);
        (t.lucas(i + 2) != &want)
            .then(|| format!("i={i}: L_{} = {} but L_{} + L_{} = {want}", i + 2, t.lucas(i + 2), i + 1, i))
    })
}

fn check_lucas_fib_bridge() -> Option<String> {
    let t = SeqTable::up_to(501);
    (1..=500u64).find_map(|i| {
        let want = t.fib(i - 1) + t.fib(i + 1);
        (t.lucas(i) != &want).then(|| format!("i={i}: L_{i} = {} but F_{} + F_{} = {want}", t.lucas(i), i - 1, i + 1))
    })
}

fn check_fib_three_term() -> Option<String> {
    let t = SeqTable::up_to(502);
    (1..=250u64).find_map(|n| {
        let lhs = t.fib(2 * n - 2) - BigInt::from(3) * t.fib(2 * n) + t.fib(2 * n + 2);
        (!lhs.is_zero()).then(|| format!("n={n}: F_{} - 3 F_{} + F_{} = {lhs}", 2 * n - 2, 2 * n, 2 * n + 2))
    })
}

fn check_lucas_three_term() -> Option<String> {
    let t = SeqTable::up_to(502);
    (1..=250u64).find_map(|n| {
        let lhs = t.lucas(2 * n - 2) - BigInt::from(3) * t.lucas(2 * n) + t.lucas(2 * n + 2);
        (!lhs.is_zero()).then(|| format!("n={n}: L_{} - 3 L_{} + L_{} = {lhs}", 2 * n - 2, 2 * n, 2 * n + 2))
    })
}

fn check_fib_addition() -> Option<String> {
    let t = SeqTable::up_to(401);
    for n in 1..=200u64 {
        for m in 1..=200u64 {
            let lhs = t.fib(n + m);
            let rhs = t.fib(n) * t.fib(m + 1) + t.fib(m) * t.fib(n - 1);
            if lhs != &rhs {
                return Some(format!("n={n}, m={m}: F_{} = {lhs} but split gives {rhs}", n + m));
            }
        }
    }
    None
}

fn check_fib_even_sum() -> Option<String> {
    let t = SeqTable::up_to(502);
    let mut sum = BigInt::zero();
    for ell in 1..=250u64 {
        sum += t.fib(2 * ell);
        let want = t.fib(2 * ell + 1) - BigInt::one();
        if sum != want {
            return Some(format!("l={ell}: sum of F_2..F_{} = {sum}, want F_{} - 1 = {want}", 2 * ell, 2 * ell + 1));
        }
    }
    None
}

fn check_fib_odd_sum() -> Option<String> {
    let t = SeqTable::up_to(502);
    for n in 1..=250u64 {
        let mut sum = BigInt::zero();
        for ell in (0..n).rev() {
            sum += t.fib(2 * (n - ell) - 1);
            if sum != *t.fib(2 * n - 2 * ell) {
                return Some(format!(
                    "n={n}, l={ell}: odd-index sum = {sum}, want F_{} = {}",
                    2 * n - 2 * ell,
                    t.fib(2 * n - 2 * ell)
                ));
            }
        }
    }
    None
}

fn check_reduced_matches_laplacian(n: usize) -> Option<String> {
    let w = DirectedWheel::new(n).expect("n >= 3");
    let l = w.out_laplacian();
    let direct = ExactMatrix::from_fn(n - 1, n - 1, |r, c| l[(r + 1, c + 1)].clone());
    let reduced = reduced_matrix(n).expect("n >= 3");
    (reduced != direct).then(|| format!("N={n}: reduced matrix differs from Laplacian deletion"))
}

fn check_fold_symmetry(n: usize) -> Option<String> {
    let h = hitting::solve_reduced(n).expect("n >= 3");
    for ell in 1..n {
        if h[ell - 1] != h[n - ell - 1] {
            return Some(format!(
                "N={n}, l={ell}: h(0,{ell}) = {} but h(0,{}) = {}",
                h[ell - 1],
                n - ell,
                h[n - ell - 1]
            ));
        }
    }
    let folded = hitting::solve_folded(n).expect("n >= 3");
    for (idx, value) in folded.iter().enumerate() {
        if value != &h[idx] {
            return Some(format!(
                "N={n}, l={}: folded solve gives {value}, reduced solve gives {}",
                idx + 1,
                h[idx]
            ));
        }
    }
    None
}

fn folded_for(n: usize, fault: Option<Fault>) -> ExactMatrix {
    let mut m = folded_matrix(n).expect("n >= 3");
    if fault == Some(Fault::FoldedSignFlip) {
        let (r, c) = if m.cols() > 1 { (0, 1) } else { (0, 0) };
        let flipped = -m[(r, c)].clone();
        m[(r, c)] = flipped;
    }
    m
}

fn check_inverse_identity(n: usize, fault: Option<Fault>) -> Option<String> {
    let h = folded_for(n, fault);
    let g = hitting::inverse_matrix(n).expect("n >= 3");
    let product = h.mul(&g).expect("conforming shapes");
    if product.is_identity() {
        return None;
    }
    for i in 0..product.rows() {
        for j in 0..product.cols() {
            let want = if i == j { Rational::one() } else { Rational::zero() };
            if product[(i, j)] != want {
                return Some(format!(
                    "N={n}, i={}, j={}: (H_N G_N)[i,j] = {}, want {want}",
                    i + 1,
                    j + 1,
                    product[(i, j)]
                ));
            }
        }
    }
    unreachable!("non-identity product must have a mismatched entry");
}

fn check_four_way_agreement(n: usize, fault: Option<Fault>) -> Option<String> {
    let reduced = hitting::solve_reduced(n).expect("n >= 3");
    let folded = hitting::solve_folded(n).expect("n >= 3");
    let inverse = hitting::via_inverse(n).expect("n >= 3");
    for ell in 1..n {
        let query = HittingQuery::new(n, ell).expect("valid query");
        let mut closed = hitting::closed_form(query);
        if fault == Some(Fault::ClosedFormOffByOne) {
            closed += Rational::one();
        }
        let half = query.folded_ell() - 1;
        if closed != reduced[ell - 1] {
            return Some(format!(
                "N={n}, l={ell}: closed form {closed} != reduced solve {}",
                reduced[ell - 1]
            ));
        }
        if closed != folded[half] {
            return Some(format!(
                "N={n}, l={ell}: closed form {closed} != folded solve {}",
                folded[half]
            ));
        }
        if closed != inverse[half] {
            return Some(format!(
                "N={n}, l={ell}: closed form {closed} != inverse formula {}",
                inverse[half]
            ));
        }
    }
    None
}

fn check_hitting_bound(n: usize) -> Option<String> {
    let three = Rational::from_integer(BigInt::from(3));
    let h = hitting::solve_reduced(n).expect("n >= 3");
    h.iter().enumerate().find_map(|(idx, value)| {
        (!(value > &Rational::zero() && value < &three))
            .then(|| format!("N={n}, l={}: h = {value} is outside (0, 3)", idx + 1))
    })
}

fn check_fold_monotonicity(n: usize) -> Option<String> {
    let folded = hitting::solve_folded(n).expect("n >= 3");
    folded.windows(2).enumerate().find_map(|(idx, w)| {
        (w[0] >= w[1]).then(|| {
            format!(
                "N={n}: h(0,{}) = {} is not below h(0,{}) = {}",
                idx + 1,
                w[0],
                idx + 2,
                w[1]
            )
        })
    })
}

fn check_in_trees_closed_form(n: usize) -> Option<String> {
    let w = DirectedWheel::new(n).expect("n >= 3");
    let cofactor = trees::count_via_cofactor(&w, VertexId::Hub, Direction::In).expect("valid root");
    let formula = trees::in_trees_closed_form(n).expect("n >= 3");
    (cofactor != formula).then(|| {
        format!("N={n}: hub in-tree cofactor {cofactor} != L_{} - 2 = {formula}", 2 * n)
    })
}

fn check_out_trees_closed_form(n: usize) -> Option<String> {
    let w = DirectedWheel::new(n).expect("n >= 3");
    let roots: Vec<VertexId> = w.vertices().collect();
    roots.into_iter().find_map(|root| {
        let cofactor =
            trees::count_via_cofactor(&w, root, Direction::Out).expect("valid root");
        let formula = trees::out_trees_closed_form(n, root).expect("n >= 3");
        (cofactor != formula)
            .then(|| format!("N={n}, root={root}: out-tree cofactor {cofactor} != {formula}"))
    })
}

fn check_enumeration_matches_cofactor(n: usize) -> Option<String> {
    let w = DirectedWheel::new(n).expect("n >= 3");
    for root in w.vertices() {
        for direction in [Direction::In, Direction::Out] {
            let enumerated = trees::enumerate(&w, root, direction).expect("within scale");
            let cofactor = trees::count_via_cofactor(&w, root, direction).expect("valid root");
            if enumerated != cofactor {
                return Some(format!(
                    "N={n}, root={root}, direction={direction}: enumeration {enumerated} != cofactor {cofactor}"
                ));
            }
        }
    }
    None
}

fn check_weighted_matrix_tree(seed: u64) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 3..=5usize {
        for trial in 0..20 {
            let mut w = DirectedWheel::new(n).expect("n >= 3");
            for k in 0..n {
                for head in [
                    VertexId::Cycle(k + 1),
                    VertexId::Cycle(k + n - 1),
                    VertexId::Hub,
                ] {
                    let weight = BigInt::from(rng.random_range(1..=4u32));
                    w.set_weight(VertexId::Cycle(k), head, weight).expect("edge exists");
                }
            }
            for root in w.vertices() {
                for direction in [Direction::In, Direction::Out] {
                    let enumerated = trees::enumerate(&w, root, direction).expect("within scale");
                    let cofactor =
                        trees::count_via_cofactor(&w, root, direction).expect("valid root");
                    if enumerated != cofactor {
                        return Some(format!(
                            "N={n}, trial={trial}, root={root}, direction={direction}: enumeration {enumerated} != cofactor {cofactor}"
                        ));
                    }
                }
            }
        }
    }
    None
}

fn check_monte_carlo(samples: u64, seed: u64) -> Option<String> {
    // 4-sigma bands; per-case false-failure probability is below 1e-4,
    // rerun with a fresh seed on a statistical trip
    [(3usize, 1usize), (4, 2), (5, 2), (8, 3)]
        .iter()
        .enumerate()
        .find_map(|(idx, &(n, ell))| {
            let config = WalkConfig::new(n, ell, samples, seed.wrapping_add(idx as u64))
                .expect("valid configuration");
            let stats = simulate(&config);
            if stats.cap_hits > 0 {
                return Some(format!(
                    "N={n}, l={ell}: {} walks hit the {} step cap",
                    stats.cap_hits,
                    crate::montecarlo::STEP_CAP
                ));
            }
            let exact = hitting::closed_form(HittingQuery::new(n, ell).expect("valid query"))
                .to_f64()
                .expect("hitting times fit in f64");
            let deviation = (stats.mean - exact).abs();
            (deviation > 4.0 * stats.std_err).then(|| {
                format!(
                    "N={n}, l={ell}: mean {} deviates {deviation:.6} from exact {exact:.6}, above 4 x std_err = {:.6}",
                    stats.mean,
                    4.0 * stats.std_err
                )
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_options() -> VerifyOptions {
        VerifyOptions {
            n_max: 12,
            enum_max: 5,
            mc_samples: 20_000,
            seed: 7,
            fault: None,
        }
    }

    #[test]
    fn clean_build_passes_all_checks() {
        let report = run(&small_options()).unwrap();
        for check in &report.checks {
            assert!(check.passed, "{} failed: {:?}", check.name, check.counterexample);
        }
        assert!(report.all_passed());
        assert!(report.first_failure().is_none());
    }

    #[test]
    fn folded_sign_flip_is_caught_with_indices() {
        let mut options = small_options();
        options.fault = Some(Fault::FoldedSignFlip);
        let report = run(&options).unwrap();
        assert!(!report.all_passed());
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "inverse-identity");
        let message = failure.counterexample.as_ref().unwrap();
        assert!(message.contains("N=3"), "message: {message}");
        assert!(message.contains("i="), "message: {message}");
    }

    #[test]
    fn closed_form_fault_is_caught() {
        let mut options = small_options();
        options.fault = Some(Fault::ClosedFormOffByOne);
        let report = run(&options).unwrap();
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "four-way-agreement");
        assert!(failure.counterexample.as_ref().unwrap().contains("N=3"));
    }

    #[test]
    fn option_validation() {
        let mut options = small_options();
        options.n_max = 2;
        assert!(run(&options).is_err());

        let mut options = small_options();
        options.enum_max = 11;
        assert!(matches!(run(&options), Err(Error::ScaleExceeded { .. })));

        let mut options = small_options();
        options.mc_samples = 0;
        assert!(run(&options).is_err());
    }

    #[test]
    fn fault_round_trips_through_strings() {
        for fault in [Fault::FoldedSignFlip, Fault::ClosedFormOffByOne] {
            assert_eq!(fault.to_string().parse::<Fault>().unwrap(), fault);
        }
        assert!("bogus".parse::<Fault>().is_err());
    }
}
