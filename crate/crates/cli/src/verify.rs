//! Reproduction suite: every checkable number and property, grouped into
//! twelve numbered criteria.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasigroups::bounds::{
    chain_bound, lower_bound_log2, q4_asymptotic_ratio, trade_upper, upper_bound_log2, Log2Interval,
};
use quasigroups::census4::{census, q4_recurrence, semilinear_counts, CensusRecord, RecurrenceRow};
use quasigroups::constructions::{big_psi, interleaved_group, psi};
use quasigroups::enumerate::gamma_analysis;
use quasigroups::enumerate::{count_extensions, count_quasigroups, Mode};
use quasigroups::fixtures;
use quasigroups::trades::{
    disjoint_family, find_components, is_component, switch, switch_family, Component, Strategy,
};
use quasigroups::{ComposedQuasigroup, Hypercube, Node, PartialQuasigroup, Point, Result};

use crate::random::{random_box, random_pair, random_quasigroup};
use crate::RunConfig;

/// One compared quantity.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Check {
    pub fn eq<T: PartialEq + fmt::Display>(
        label: impl Into<String>,
        expected: T,
        actual: T,
    ) -> Self {
        Check {
            label: label.into(),
            ok: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    /// A claim that is either true or not, with what was observed.
    pub fn holds(
        label: impl Into<String>,
        claim: impl Into<String>,
        ok: bool,
        actual: impl fmt::Display,
    ) -> Self {
        Check {
            label: label.into(),
            expected: claim.into(),
            actual: actual.to_string(),
            ok,
        }
    }
}

/// The result of running one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Set when the criterion stopped on an error instead of a comparison.
    pub error: Option<String>,
    /// Sub-checks left out because slow checks were disabled.
    pub skipped: Vec<&'static str>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.ok)
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.ok).count();
        write!(
            f,
            "{} criterion {:>2} {}: {}/{} checks, {:.2}s (budget {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            passed,
            self.checks.len(),
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )?;
        if !self.skipped.is_empty() {
            write!(f, " [skipped: {}]", self.skipped.join(", "))?;
        }
        if let Some(e) = &self.error {
            write!(f, "\n    error: {e}")?;
        }
        for c in self.checks.iter().filter(|c| !c.ok) {
            write!(
                f,
                "\n    {}: expected {}, got {}",
                c.label, c.expected, c.actual
            )?;
        }
        Ok(())
    }
}

/// Reference data the suite compares against.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub phi4: Hypercube,
    /// The order-9 table as stored, for byte comparison.
    pub psi9_text: String,
    pub q4_loops: Vec<BigUint>,
    pub q4_quasigroups: Vec<BigUint>,
}

fn parse_counts(list: &[String]) -> std::result::Result<Vec<BigUint>, String> {
    list.iter()
        .map(|s| s.parse().map_err(|e| format!("bad count {s:?}: {e}")))
        .collect()
}

impl Fixtures {
    fn from_texts(phi4: &str, psi9: &str, q4: &str) -> std::result::Result<Self, String> {
        let values = fixtures::Q4Values::parse(q4).map_err(|e| format!("q4_values.json: {e}"))?;
        Ok(Fixtures {
            phi4: Hypercube::from_json(phi4).map_err(|e| format!("phi4.json: {e}"))?,
            psi9_text: psi9.to_string(),
            q4_loops: parse_counts(&values.loops)?,
            q4_quasigroups: parse_counts(&values.quasigroups)?,
        })
    }

    /// The copies compiled into the library.
    pub fn embedded() -> Self {
        Fixtures::from_texts(
            fixtures::PHI4_JSON,
            fixtures::PSI9_JSON,
            fixtures::Q4_VALUES_JSON,
        )
        .expect("embedded fixtures are valid")
    }

    /// Reads `phi4.json`, `psi9.json` and `q4_values.json` from `dir`.
    pub fn load(dir: &Path) -> std::result::Result<Self, String> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| format!("{}: {e}", dir.join(name).display()))
        };
        Fixtures::from_texts(
            &read("phi4.json")?,
            &read("psi9.json")?,
            &read("q4_values.json")?,
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub config: RunConfig,
    /// Leaves out the order-4 quaternary census and the order-5 enumeration.
    pub skip_slow: bool,
    pub fixtures: Fixtures,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            config: RunConfig::default(),
            skip_slow: false,
            fixtures: Fixtures::embedded(),
        }
    }
}

type Body = fn(&VerifyOptions, &mut Vec<Check>, &mut Vec<&'static str>) -> Result<()>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    body: Body,
}

impl Criterion {
    pub fn run(&self, opts: &VerifyOptions) -> Outcome {
        let start = Instant::now();
        let mut checks = Vec::new();
        let mut skipped = Vec::new();
        let error = (self.body)(opts, &mut checks, &mut skipped)
            .err()
            .map(|e| e.to_string());
        Outcome {
            id: self.id,
            name: self.name,
            checks,
            error,
            skipped,
            elapsed: start.elapsed(),
            budget: self.budget,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, body| Criterion {
        id,
        name,
        budget: Duration::from_secs(secs),
        body,
    };
    vec![
        c(1, "recurrence reproduction", 1, recurrence as Body),
        c(2, "enumeration oracles", 30, enumeration),
        c(3, "normalization identity", 60, normalization),
        c(4, "census vs recurrence", 300, census_vs_recurrence),
        c(5, "semilinear counts", 60, semilinear),
        c(6, "psi reproduction", 5, psi_reproduction),
        c(7, "lower-bound witness", 120, lower_bound_witness),
        c(8, "even-order trade equality", 30, even_trades),
        c(9, "extension graph suite", 120, extension_graph),
        c(10, "bound sandwich", 60, bound_sandwich),
        c(11, "asymptotics spot check", 1, asymptotics),
        c(12, "property suites", 120, properties),
    ]
}

pub fn run_all(opts: &VerifyOptions) -> Vec<Outcome> {
    criteria().iter().map(|c| c.run(opts)).collect()
}

fn count(n: usize, k: usize, mode: Mode, opts: &VerifyOptions) -> Result<BigUint> {
    count_quasigroups(n, k, mode, &opts.config.enum_config())
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// `k · ((k-1)!)^n · loops`.
fn from_loops(n: usize, k: usize, loops: &BigUint) -> BigUint {
    BigUint::from(k) * factorial(k - 1).pow(n as u32) * loops
}

fn recurrence(opts: &VerifyOptions, out: &mut Vec<Check>, _: &mut Vec<&'static str>) -> Result<()> {
    let rows = q4_recurrence(8)?;
    let fx = &opts.fixtures;
    out.push(Check::eq(
        "fixture rows",
        8,
        fx.q4_loops.len().min(fx.q4_quasigroups.len()),
    ));
    for (row, (v, q)) in rows.iter().zip(fx.q4_loops.iter().zip(&fx.q4_quasigroups)) {
        out.push(Check::eq(format!("Q'({},4)", row.n), v, &row.v));
        out.push(Check::eq(format!("Q({},4)", row.n), q, &row.q));
    }
    let last = &rows[7];
    out.push(Check::eq("digits of Q(8,4)", 82, last.q.to_string().len()));
    if let Some(v8) = fx.q4_loops.get(7) {
        out.push(Check::eq(
            "digits of Q'(8,4)",
            v8.to_string().len(),
            last.v.to_string().len(),
        ));
    }
    Ok(())
}

fn enumeration(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    _: &mut Vec<&'static str>,
) -> Result<()> {
    let cases: [(usize, usize, Mode, u64); 9] = [
        (2, 2, Mode::All, 2),
        (2, 3, Mode::All, 12),
        (3, 3, Mode::All, 24),
        (1, 4, Mode::All, 24),
        (2, 4, Mode::All, 576),
        (3, 4, Mode::All, 55296),
        (2, 4, Mode::Loops, 4),
        (3, 4, Mode::Loops, 64),
        (4, 4, Mode::Loops, 7132),
    ];
    for (n, k, mode, expected) in cases {
        let what = if mode == Mode::Loops { "Q'" } else { "Q" };
        out.push(Check::eq(
            format!("{what}({n},{k})"),
            BigUint::from(expected),
            count(n, k, mode, opts)?,
        ));
    }
    for n in 1..=3 {
        out.push(Check::eq(
            format!("Q({n},3) = 3·2^n"),
            BigUint::from(3u32 << n),
            count(n, 3, Mode::All, opts)?,
        ));
    }
    Ok(())
}

fn normalization(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    skipped: &mut Vec<&'static str>,
) -> Result<()> {
    let mut pairs = vec![(2, 2), (2, 3), (3, 3), (1, 4), (2, 4), (3, 4)];
    if opts.skip_slow {
        skipped.push("Q(2,5)");
    } else {
        pairs.push((2, 5));
    }
    for (n, k) in pairs {
        let all = count(n, k, Mode::All, opts)?;
        let loops = count(n, k, Mode::Loops, opts)?;
        out.push(Check::eq(
            format!("Q({n},{k}) from Q'"),
            all,
            from_loops(n, k, &loops),
        ));
    }
    // Q(4,4) is too large to enumerate; compare against the published value.
    let loops = count(4, 4, Mode::Loops, opts)?;
    if let Some(q) = opts.fixtures.q4_quasigroups.get(3) {
        out.push(Check::eq(
            "Q(4,4) from Q'",
            q.clone(),
            from_loops(4, 4, &loops),
        ));
    }
    Ok(())
}

fn compare_census(rec: &CensusRecord, row: &RecurrenceRow, out: &mut Vec<Check>) {
    let n = rec.n;
    let big = |x: u64| BigUint::from(x);
    out.push(Check::eq(
        format!("n={n} total"),
        row.v.clone(),
        big(rec.total),
    ));
    out.push(Check::eq(
        format!("n={n} binary root operations seen"),
        4,
        rec.binary_root.len(),
    ));
    for (name, &c) in &rec.binary_root {
        out.push(Check::eq(
            format!("n={n} root {name}"),
            row.r_star.clone(),
            big(c),
        ));
    }
    out.push(Check::eq(
        format!("n={n} higher root"),
        row.r_0.clone(),
        big(rec.higher_root),
    ));
    out.push(Check::eq(
        format!("n={n} irreducible"),
        row.p.clone(),
        big(rec.irreducible),
    ));
    for a in 0..3 {
        out.push(Check::eq(
            format!("n={n} {}-semilinear", a + 1),
            row.l_a.clone(),
            big(rec.a_semilinear[a]),
        ));
    }
    out.push(Check::eq(
        format!("n={n} semilinear"),
        &row.l_a * 3u32 - 2u32,
        big(rec.semilinear),
    ));
    out.push(Check::eq(format!("n={n} linear"), 1, rec.linear));
    out.push(Check::eq(
        format!("n={n} neither reducible nor semilinear"),
        0,
        rec.violating,
    ));
    for per in &rec.per_a {
        let a = per.a;
        for name in ["Z2xZ2".to_string(), format!("Z4/{a}")] {
            let got = per.binary_root.get(&name).copied().unwrap_or(0);
            out.push(Check::eq(
                format!("n={n} {a}-semilinear, root {name}"),
                row.r_a_star.clone(),
                big(got),
            ));
        }
        out.push(Check::eq(
            format!("n={n} {a}-semilinear, higher root"),
            row.r_a_0.clone(),
            big(per.higher_root),
        ));
        out.push(Check::eq(
            format!("n={n} {a}-semilinear, irreducible"),
            row.p_a.clone(),
            big(per.irreducible),
        ));
    }
}

fn census_vs_recurrence(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    skipped: &mut Vec<&'static str>,
) -> Result<()> {
    let rows = q4_recurrence(4)?;
    compare_census(&census(3)?, &rows[2], out);
    if opts.skip_slow {
        skipped.push("census(4)");
    } else {
        compare_census(&census(4)?, &rows[3], out);
    }
    Ok(())
}

fn semilinear(_: &VerifyOptions, out: &mut Vec<Check>, _: &mut Vec<&'static str>) -> Result<()> {
    for n in 2..=4usize {
        let expected = 1u64 << ((1 << n) - n - 1);
        let counts = semilinear_counts(n)?;
        for (a, &c) in counts.iter().enumerate() {
            out.push(Check::eq(format!("n={n} a={}", a + 1), expected, c));
        }
    }
    Ok(())
}

fn psi_reproduction(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    _: &mut Vec<&'static str>,
) -> Result<()> {
    let psi9 = psi(4, Some(&opts.fixtures.phi4))?;
    let text = serde_json::to_string(&psi9)? + "\n";
    out.push(Check::holds(
        "psi(4, phi4) bytes",
        "identical to psi9.json",
        text == opts.fixtures.psi9_text,
        if text == opts.fixtures.psi9_text {
            "identical"
        } else {
            "different"
        },
    ));
    for m in 3..=8usize {
        let table = psi(m, None)?;
        out.push(Check::holds(
            format!("psi({m}) is a quasigroup"),
            "true",
            table.is_quasigroup(),
            table.is_quasigroup(),
        ));
        for i in 0..m as u8 {
            let comps = find_components(&table, 2 * i, 2 * i + 1)?;
            out.push(Check::eq(
                format!("psi({m}) {{{},{}}}-components", 2 * i, 2 * i + 1),
                m,
                comps.len(),
            ));
            out.push(Check::eq(
                format!("psi({m}) {{{},{}}}-boxes", 2 * i, 2 * i + 1),
                m - 1,
                comps.iter().filter(|c| c.is_box()).count(),
            ));
        }
    }
    Ok(())
}

fn lower_bound_witness(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    _: &mut Vec<&'static str>,
) -> Result<()> {
    let mut witness = None;
    for (k, n) in [(7, 2), (7, 3), (7, 4), (9, 2), (9, 3)] {
        let table = big_psi(n, (k - 1) / 2)?.materialize(opts.config.mat_cap)?;
        let family = disjoint_family(&table, Strategy::PairPartition)?;
        let bound = lower_bound_log2(n, k)?;
        let size = BigUint::from(family.components.len());
        out.push(Check::holds(
            format!("k={k} n={n} family size"),
            format!(">= {bound}"),
            size >= bound,
            size,
        ));
        if (k, n) == (7, 3) {
            witness = Some((table, family.components));
        }
    }
    let (table, components) = witness.expect("the k=7, n=3 case ran");
    let d = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.config.seed);
    let chosen: Vec<Component> = components.choose_multiple(&mut rng, d).cloned().collect();
    out.push(Check::eq("components chosen", d, chosen.len()));
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut valid = 0usize;
    for bits in 0u32..1 << chosen.len() {
        let mask: Vec<bool> = (0..chosen.len()).map(|i| bits >> i & 1 == 1).collect();
        let g = switch_family(&table, &chosen, &mask)?;
        valid += g.is_quasigroup() as usize;
        seen.insert(g.values().to_vec());
    }
    out.push(Check::eq("valid switched quasigroups", 1 << d, valid));
    out.push(Check::eq(
        "pairwise distinct switched quasigroups",
        1 << d,
        seen.len(),
    ));
    Ok(())
}

fn even_trades(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    _: &mut Vec<&'static str>,
) -> Result<()> {
    for (n, k) in [(2, 4), (3, 4), (2, 6), (3, 6)] {
        let f = interleaved_group(n, k, opts.config.mat_cap)?;
        let family = disjoint_family(&f, Strategy::PairPartition)?;
        let expected = (k / 2).pow(n as u32);
        out.push(Check::eq(
            format!("n={n} k={k} components"),
            expected,
            family.components.len(),
        ));
        out.push(Check::eq(
            format!("n={n} k={k} trd upper"),
            trade_upper(n, k),
            BigUint::from(family.components.len()),
        ));
        let all_sized = family.sizes().iter().all(|&s| s == 1 << n);
        out.push(Check::holds(
            format!("n={n} k={k} sizes"),
            format!("all {}", 1 << n),
            all_sized,
            format!("{:?}", family.sizes()),
        ));
        let mut cells = HashSet::new();
        let mut all_components = true;
        for c in &family.components {
            all_components &= is_component(&f, c.pair, &c.points)?;
            cells.extend(c.cells(&f)?);
        }
        out.push(Check::holds(
            format!("n={n} k={k} validity"),
            "every member is a component",
            all_components,
            all_components,
        ));
        out.push(Check::eq(
            format!("n={n} k={k} disjointness"),
            family.sizes().iter().sum::<usize>(),
            cells.len(),
        ));
    }
    Ok(())
}

fn extension_graph(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    _: &mut Vec<&'static str>,
) -> Result<()> {
    const CASES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.config.seed ^ 0x9e37_79b9);
    let cfg = opts.config.enum_config();
    let (mut agree, mut under_cap, mut sized, mut extendable) = (0, 0, 0, 0);
    let mut first_failure: Option<String> = None;
    for case in 0..CASES {
        let n = *[2usize, 3].choose(&mut rng).unwrap();
        let k = *[4usize, 5, 6].choose(&mut rng).unwrap();
        let (g, _) = random_box(n, k, &mut rng)?;
        let exact = count_extensions(&g, &cfg)?;
        let report = gamma_analysis(&g)?;
        let product = report.extension_count();
        // ⌊2^((k/2)^(n-1))⌋; the exponent is at most 9 here, so f64 is exact
        // for even k and far from an integer for odd k
        let cap = BigUint::from(2f64.powf((k as f64 / 2.0).powi(n as i32 - 1)).floor() as u64);
        let within = exact <= cap;
        let min_component = report.components.iter().map(Vec::len).min().unwrap_or(0);
        let ok_sized = min_component >= 1 << (n - 1);
        agree += (exact == product) as usize;
        under_cap += within as usize;
        sized += ok_sized as usize;
        extendable += !exact.is_zero() as usize;
        if first_failure.is_none() && !(exact == product && within && ok_sized) {
            first_failure = Some(format!(
                "case {case}: n={n} k={k} exact={exact} product={product} min component={min_component}"
            ));
        }
    }
    out.push(Check::eq(
        "completion count = Γ choice product",
        CASES,
        agree,
    ));
    out.push(Check::eq(
        "completion count <= 2^((k/2)^(n-1))",
        CASES,
        under_cap,
    ));
    out.push(Check::eq("Γ components of size >= 2^(n-1)", CASES, sized));
    out.push(Check::eq(
        "boxes cut from quasigroups extend",
        CASES,
        extendable,
    ));
    if let Some(f) = first_failure {
        out.push(Check::holds("first failing case", "none", false, f));
    }
    Ok(())
}

fn bound_sandwich(
    opts: &VerifyOptions,
    out: &mut Vec<Check>,
    skipped: &mut Vec<&'static str>,
) -> Result<()> {
    // enumerated Q(n,k) by k, indexed from n = 1
    let mut known: Vec<(usize, Vec<BigUint>)> = vec![
        (
            3,
            (1..=3)
                .map(|n| count(n, 3, Mode::All, opts))
                .collect::<Result<_>>()?,
        ),
        (4, {
            let mut v = (1..=3)
                .map(|n| count(n, 4, Mode::All, opts))
                .collect::<Result<Vec<_>>>()?;
            v.push(from_loops(4, 4, &count(4, 4, Mode::Loops, opts)?));
            v
        }),
    ];
    if opts.skip_slow {
        skipped.push("Q(2,5)");
    } else {
        let q15 = count(1, 5, Mode::All, opts)?;
        let q25 = count(2, 5, Mode::All, opts)?;
        out.push(Check::eq("Q(2,5)", BigUint::from(161280u32), q25.clone()));
        let lower = lower_bound_log2(2, 5)?.to_f64().unwrap_or(f64::INFINITY);
        let value = Log2Interval::of_count(&q25)?;
        let upper = Log2Interval::around(upper_bound_log2(2, 5)?);
        out.push(Check::holds(
            "lower exponent <= log2 Q(2,5)",
            format!("{lower} <= log2 Q"),
            Log2Interval::exact(lower).certainly_le(&value),
            format!("[{:.6}, {:.6}]", value.lo, value.hi),
        ));
        out.push(Check::holds(
            "log2 Q(2,5) <= upper bound",
            format!("log2 Q <= {:.4}", upper.lo),
            value.certainly_le(&upper),
            format!("[{:.6}, {:.6}]", value.lo, value.hi),
        ));
        known.push((5, vec![q15, q25]));
    }
    for (k, values) in &known {
        let top = values.len();
        // chained from n = 1, and one step from every enumerated arity
        let chained = chain_bound(1, top, *k, &values[0])?;
        let mut steps: Vec<(usize, Log2Interval, &'static str)> =
            chained.iter().map(|s| (s.n, s.log2, "chained")).collect();
        for from in 1..top {
            let step = chain_bound(from, from + 1, *k, &values[from - 1])?;
            steps.push((step[0].n, step[0].log2, "one step"));
        }
        for (n, bound, how) in steps {
            let value = Log2Interval::of_count(&values[n - 1])?;
            out.push(Check::holds(
                format!("chain bound k={k} n={n} ({how})"),
                format!("log2 Q <= {:.4}", bound.lo),
                value.certainly_le(&bound),
                format!("{:.4}", value.hi),
            ));
        }
    }
    Ok(())
}

fn asymptotics(_: &VerifyOptions, out: &mut Vec<Check>, _: &mut Vec<&'static str>) -> Result<()> {
    let r8 = q4_asymptotic_ratio(8)?;
    out.push(Check::holds(
        "ratio(8) within 1% of 1",
        "|r - 1| <= 0.01",
        (r8.approx - 1.0).abs() <= 0.01,
        format!("{:.6}", r8.approx),
    ));
    out.push(Check::eq(
        "ratio(3)",
        "4/3".to_string(),
        q4_asymptotic_ratio(3)?.exact,
    ));
    Ok(())
}

fn random_shape(rng: &mut ChaCha8Rng, ks: std::ops::RangeInclusive<usize>) -> (usize, usize) {
    (rng.gen_range(2..=3), rng.gen_range(ks))
}

fn properties(opts: &VerifyOptions, out: &mut Vec<Check>, _: &mut Vec<&'static str>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.config.seed ^ 0x051a_b1e5);
    let mut tally = |label: &str, cases: usize, passed: usize| {
        out.push(Check::eq(label.to_string(), cases, passed));
    };

    let mut ok = 0;
    for _ in 0..150 {
        let (n, k) = random_shape(&mut rng, 3..=7);
        let f = random_quasigroup(n, k, k, &mut rng)?;
        let (a, b) = random_pair(k, &mut rng);
        let comps = find_components(&f, a, b)?;
        let c = comps.choose(&mut rng).expect("nonempty support");
        let g = switch(&f, c)?;
        ok += (g.is_quasigroup() && g != f && switch(&g, c)? == f) as usize;
    }
    tally("switch involution", 150, ok);

    let mut ok = 0;
    for _ in 0..100 {
        let (n, k) = random_shape(&mut rng, 4..=7);
        let f = random_quasigroup(n, k, k, &mut rng)?;
        let family = disjoint_family(&f, Strategy::Greedy)?.components;
        let pick: Vec<&Component> = family.choose_multiple(&mut rng, 2).collect();
        ok += match pick.as_slice() {
            [x, y] => {
                let xy = switch(&switch(&f, x)?, y)?;
                let yx = switch(&switch(&f, y)?, x)?;
                let both = switch_family(&f, &[(*x).clone(), (*y).clone()], &[true, true])?;
                xy == yx && xy == both && xy.is_quasigroup()
            }
            _ => false,
        } as usize;
    }
    tally("disjoint switch commutation", 100, ok);

    let mut ok = 0;
    for _ in 0..100 {
        let (n, k) = random_shape(&mut rng, 3..=7);
        let f = random_quasigroup(n, k, k, &mut rng)?;
        let (a, b) = random_pair(k, &mut rng);
        let mut good = true;
        for c in find_components(&f, a, b)? {
            good &= c.len() >= 1 << n && is_component(&f, c.pair, &c.points)?;
        }
        ok += good as usize;
    }
    tally("component size >= 2^n", 100, ok);

    let g = Arc::new(psi(3, None)?);
    let mut ok = 0;
    for _ in 0..50 {
        let q1 = random_quasigroup(2, 7, 14, &mut rng)?;
        let q2 = random_quasigroup(2, 7, 14, &mut rng)?;
        let f = ComposedQuasigroup::new(Node::op(
            g.clone(),
            Node::op(Arc::new(q1.clone()), Node::var(0), Node::var(1)),
            Node::op(Arc::new(q2.clone()), Node::var(2), Node::var(3)),
        ))?
        .materialize(opts.config.mat_cap)?;
        let i = rng.gen_range(0..3u8);
        let boxes: Vec<Component> = find_components(&g, 2 * i, 2 * i + 1)?
            .into_iter()
            .filter(Component::is_box)
            .collect();
        let c = boxes.choose(&mut rng).expect("psi has box components");
        let axis_values = |axis: usize| {
            let mut v: Vec<u8> = c.points.iter().map(|p| p[axis]).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (xs, ys) = (axis_values(0), axis_values(1));
        let c1 = find_components(&q1, xs[0], xs[1])?;
        let c2 = find_components(&q2, ys[0], ys[1])?;
        let c1 = c1.choose(&mut rng).expect("nonempty");
        let c2 = c2.choose(&mut rng).expect("nonempty");
        let product: Vec<Point> = c1
            .points
            .iter()
            .flat_map(|p| {
                c2.points
                    .iter()
                    .map(move |q| Point([p.0.clone(), q.0.clone()].concat()))
            })
            .collect();
        ok += is_component(&f, c.pair, &product)? as usize;
    }
    tally("product components, k=7 n=4", 50, ok);

    let mut ok = 0;
    for _ in 0..100 {
        let (n, k) = random_shape(&mut rng, 3..=7);
        let f = random_quasigroup(n, k, k, &mut rng)?;
        let (g, _) = random_box(n, k, &mut rng)?;
        let c = find_components(&f, 0, 1)?.swap_remove(0);
        let f_back = Hypercube::from_json(&f.to_json()?)?;
        let g_back = PartialQuasigroup::from_json(&g.to_json()?)?;
        let c_back: Component = serde_json::from_str(&serde_json::to_string(&c)?)?;
        ok += (f_back == f && g_back == g && c_back == c) as usize;
    }
    tally("serialization round trips", 100, ok);
    Ok(())
}
