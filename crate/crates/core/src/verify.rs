//! Named verification suites. Each suite runs a group of exact checks and
//! reports the first failing coefficient of every failed check.

use std::fmt;
use std::str::FromStr;
use std::thread;

use num_traits::One;

use crate::error::{Error, Result};
use crate::jacobi::{assemble_a5, pde_residual, theta_ode_residual, A5Route, OdeForm, ThetaWhich};
use crate::mock::{
    crank_trace_residual, f_family, integrality_check, leading_pattern_check, polya_residual,
    verify_trace_identity, MockFamily, Route, TraceWeight,
};
use crate::partitions::{count_table, CountTable};
use crate::qfunctions::moments::crank_moments_eisenstein;
use crate::qfunctions::{
    crank_moment, fgk_multisum, krank_count_series, rank_moment, theta, MomentMethod,
};
use crate::rational::{to_fraction_string, ExactRational};
use crate::residual::Residual;
use crate::series::{euler_product, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Counts,
    Moments,
    Routes,
    Traces,
    Integrality,
    Pattern,
    Pde,
    ThetaOde,
    Crank,
}

impl Suite {
    /// Every concrete suite, in reporting order.
    pub const EACH: [Suite; 9] = [
        Suite::Counts,
        Suite::Moments,
        Suite::Routes,
        Suite::Traces,
        Suite::Integrality,
        Suite::Pattern,
        Suite::Pde,
        Suite::ThetaOde,
        Suite::Crank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Counts => "counts",
            Suite::Moments => "moments",
            Suite::Routes => "routes",
            Suite::Traces => "traces",
            Suite::Integrality => "integrality",
            Suite::Pattern => "pattern",
            Suite::Pde => "pde",
            Suite::ThetaOde => "theta-ode",
            Suite::Crank => "crank",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Size overrides. `None` selects the suite default.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub k: Option<u32>,
    pub max_j: Option<usize>,
    pub max_n: Option<usize>,
    pub max_m: Option<usize>,
    pub order: Option<usize>,
    /// Corrupts one oracle value per suite; every suite must then fail.
    pub inject_fault: bool,
}

impl SuiteParams {
    fn ks(&self) -> Vec<u32> {
        match self.k {
            Some(k) => vec![k],
            None => vec![3, 4, 5],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}", self.name)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        let n_pass = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "  {}/{} checks passed", n_pass, self.checks.len())
    }
}

/// Collects checks and applies the optional fault to the first oracle.
struct Recorder {
    checks: Vec<CheckResult>,
    fault: bool,
}

impl Recorder {
    fn new(fault: bool) -> Self {
        Self { checks: Vec::new(), fault }
    }

    fn taint_series(&mut self, s: &mut QSeries) {
        if std::mem::take(&mut self.fault) {
            s.add_at(s.order(), &ExactRational::one());
        }
    }

    fn taint_table(&mut self, t: &mut CountTable) {
        if std::mem::take(&mut self.fault) {
            let n = t.max_n();
            let v = t.get(0, n).unwrap_or(0);
            t.set(0, n, v + 1);
        }
    }

    fn taint_residual(&mut self, r: Residual) -> Residual {
        if !std::mem::take(&mut self.fault) {
            return r;
        }
        let mut entries = r.entries().to_vec();
        if let Some((_, s)) = entries.first_mut() {
            s.add_at(s.order(), &ExactRational::one());
        }
        Residual::new(entries)
    }

    fn outcome(&mut self, name: String, failure: Option<String>) {
        self.checks.push(CheckResult { name, passed: failure.is_none(), detail: failure });
    }

    fn series_eq(&mut self, name: String, got: &QSeries, oracle: &QSeries) {
        let mut oracle = oracle.clone();
        self.taint_series(&mut oracle);
        let failure = first_difference(got, &oracle);
        self.outcome(name, failure);
    }

    fn residual(&mut self, name: String, r: Residual) {
        let r = self.taint_residual(r);
        let failure = r.first_nonzero().map(|o| o.to_string());
        self.outcome(name, failure);
    }

    fn error(&mut self, name: String, e: Error) {
        self.outcome(name, Some(format!("error: {e}")));
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport { suite, checks: self.checks }
    }
}

fn first_difference(a: &QSeries, b: &QSeries) -> Option<String> {
    let n = a.order().min(b.order());
    (0..=n).find(|&i| a[i] != b[i]).map(|i| {
        format!(
            "coefficient of q^{i}: {} vs {}",
            to_fraction_string(&a[i]),
            to_fraction_string(&b[i])
        )
    })
}

fn tables_differ(a: &CountTable, b: &CountTable) -> Option<String> {
    a.iter().zip(b.iter()).find(|(x, y)| x != y).map(|((m, n, x), (_, _, y))| {
        format!("N(m={m}, n={n}): {x} vs {y}")
    })
}

/// Runs one suite, or every suite for [`Suite::All`], concatenating reports.
pub fn run(suite: Suite, params: &SuiteParams) -> Vec<SuiteReport> {
    match suite {
        Suite::All => thread::scope(|s| {
            let handles: Vec<_> = Suite::EACH
                .iter()
                .map(|&x| s.spawn(move || run_suite(x, params)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect()
        }),
        other => vec![run_suite(other, params)],
    }
}

/// Runs a single concrete suite.
pub fn run_suite(suite: Suite, p: &SuiteParams) -> SuiteReport {
    let mut rec = Recorder::new(p.inject_fault);
    match suite {
        Suite::All => {
            let mut checks = Vec::new();
            for r in run(Suite::All, p) {
                checks.extend(r.checks);
            }
            return SuiteReport { suite, checks };
        }
        Suite::Counts => counts(&mut rec, p),
        Suite::Moments => moments(&mut rec, p),
        Suite::Routes => routes(&mut rec, p),
        Suite::Traces => traces(&mut rec, p),
        Suite::Integrality => integrality(&mut rec, p),
        Suite::Pattern => pattern(&mut rec, p),
        Suite::Pde => pde(&mut rec, p),
        Suite::ThetaOde => theta_ode(&mut rec, p),
        Suite::Crank => crank(&mut rec, p),
    }
    rec.finish(suite)
}

fn counts(rec: &mut Recorder, p: &SuiteParams) {
    for k in p.ks() {
        let (dm, dn) = if k == 3 { (5, 15) } else { (6, 25) };
        let max_m = p.max_m.unwrap_or(dm);
        let max_n = p.max_n.unwrap_or(dn);
        let label = format!("k={k} n<={max_n} |m|<={max_m}");
        let mut oracle = match count_table(k, max_m, max_n) {
            Ok(t) => t,
            Err(e) => return rec.error(format!("enumeration {label}"), e),
        };
        rec.taint_table(&mut oracle);

        let mut failure = None;
        for m in -(max_m as i64)..=max_m as i64 {
            match krank_count_series(k, m, max_n) {
                Ok(s) => {
                    for n in 0..=max_n {
                        let want = ExactRational::from_integer(oracle.get(m, n).unwrap_or(0).into());
                        if s[n] != want && failure.is_none() {
                            failure = Some(format!(
                                "N(m={m}, n={n}): series {} vs enumeration {}",
                                to_fraction_string(&s[n]),
                                to_fraction_string(&want)
                            ));
                        }
                    }
                }
                Err(e) => failure = Some(format!("error: {e}")),
            }
        }
        rec.outcome(format!("count series = enumeration, {label}"), failure);

        if k >= 3 {
            let name = format!("multisum = enumeration, {label}");
            match fgk_multisum(k, max_m, max_n) {
                Ok(t) => {
                    let d = tables_differ(&t, &oracle);
                    rec.outcome(name, d);
                }
                Err(e) => rec.error(name, e),
            }
        }
    }
}

fn moments(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(40);
    let max_j = p.max_j.unwrap_or(10) as u32;
    let comb_n = p.max_n.unwrap_or(25);
    for k in p.ks() {
        let mut inner = || -> Result<()> {
            let pinv = euler_product(order).inv()?;
            let r0 = rank_moment(k, 0, order, MomentMethod::Direct)?.series;
            let formula = &(&QSeries::one(order) - &theta(1, 2 * k as i64 - 1, order)?) * &pinv;
            rec.series_eq(format!("k={k} R_0 = (1 - theta)/(q)_inf, order {order}"), &r0, &formula);
            for j in 1..=max_j {
                let direct = rank_moment(k, j, order, MomentMethod::Direct)?.series;
                let div = rank_moment(k, j, order, MomentMethod::DivisorSum)?.series;
                if j % 2 == 1 {
                    let zero = QSeries::zero(order);
                    rec.series_eq(format!("k={k} j={j} direct moment vanishes"), &direct, &zero);
                    rec.series_eq(format!("k={k} j={j} divisor-sum moment vanishes"), &div, &zero);
                } else {
                    rec.series_eq(format!("k={k} j={j} direct = divisor-sum, order {order}"), &direct, &div);
                }
            }
            for j in 0..=max_j.min(6) {
                let comb = rank_moment(k, j, comb_n, MomentMethod::Combinatorial)?.series;
                let direct = rank_moment(k, j, comb_n, MomentMethod::Direct)?.series;
                rec.series_eq(format!("k={k} j={j} combinatorial = direct, n<={comb_n}"), &direct, &comb);
            }
            Ok(())
        };
        if let Err(e) = inner() {
            rec.error(format!("k={k} moments"), e);
        }
    }
}

fn build_family(k: u32, max_j: usize, order: usize, route: Route) -> Result<MockFamily> {
    f_family(k, max_j, order, route)
}

fn routes(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(40);
    let max_j = p.max_j.unwrap_or(12);
    for k in p.ks() {
        let fams: Result<Vec<MockFamily>> = Route::ALL
            .iter()
            .map(|&r| build_family(k, max_j, order, r))
            .collect();
        let fams = match fams {
            Ok(f) => f,
            Err(e) => {
                rec.error(format!("k={k} families"), e);
                continue;
            }
        };
        for j in 1..=max_j {
            let a = fams[0].member(j).expect("built").clone();
            for (fam, route) in fams.iter().zip(Route::ALL).skip(1) {
                rec.series_eq(
                    format!("k={k} j={j} {} = {route}, order {order}", Route::RecursionA),
                    fam.member(j).expect("built"),
                    &a,
                );
            }
        }
    }
}

fn traces(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(30);
    let max_j = p.max_j.unwrap_or(8);
    for k in p.ks() {
        let name = format!("k={k} trace identity through z^{max_j}, order {order}");
        match verify_trace_identity(k, max_j, order) {
            Ok(r) => rec.residual(name, r),
            Err(e) => rec.error(name, e),
        }
        let polya_j = max_j.max(10);
        match f_family(k, polya_j, order, Route::RecursionA) {
            Ok(fam) => {
                for w in [TraceWeight::Phi, TraceWeight::Psi] {
                    let name = format!("k={k} {w:?} trace generating function through w^{polya_j}");
                    match polya_residual(&fam, w, polya_j) {
                        Ok(r) => rec.residual(name, r),
                        Err(e) => rec.error(name, e),
                    }
                }
            }
            Err(e) => rec.error(format!("k={k} family"), e),
        }
    }
}

fn integrality(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(60);
    let max_j = p.max_j.unwrap_or(12);
    for k in p.ks() {
        let name = format!("k={k} shifted members j<={max_j} integral, order {order}");
        match f_family(k, max_j, order, Route::RecursionA) {
            Ok(fam) => {
                let fam = if std::mem::take(&mut rec.fault) {
                    let mut members = fam.members().to_vec();
                    let last = members.len() - 1;
                    let o = members[last].order();
                    members[last].add_at(o, &ExactRational::new(1.into(), 2.into()));
                    MockFamily::from_members(k, members).expect("non-empty")
                } else {
                    fam
                };
                rec.outcome(name, integrality_check(&fam).map(|x| x.to_string()));
            }
            Err(e) => rec.error(name, e),
        }
    }
}

fn pattern(rec: &mut Recorder, p: &SuiteParams) {
    let max_j = p.max_j.unwrap_or(12) as u32;
    for k in p.ks() {
        let order = p.order.unwrap_or(2 * k as usize);
        for j in (2..=max_j).step_by(2) {
            let name = format!("k={k} j={j} leading coefficients");
            match leading_pattern_check(k, j, order) {
                Ok(mut r) => {
                    if std::mem::take(&mut rec.fault) {
                        r = Some(crate::mock::CoefficientMismatch {
                            exponent: k as usize,
                            expected: ExactRational::from_integer(2.into()),
                            found: ExactRational::one(),
                        });
                    }
                    rec.outcome(name, r.map(|x| x.to_string()));
                }
                Err(e) => rec.error(name, e),
            }
        }
    }
}

fn pde(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(20);
    let nw = p.max_j.unwrap_or(7) as i64;
    let name = format!("level-5 PDE residual on w^-5..w^{nw}, order {order}");
    match pde_residual(nw, order) {
        Ok(j) => {
            let r = Residual::new(j.iter().map(|(d, s)| (d, s.clone())).collect());
            rec.residual(name, r);
        }
        Err(e) => rec.error(name, e),
    }
    let name = format!("A_5 expansions agree through w^6, order {order}");
    match (
        assemble_a5(6, order, A5Route::GenericInversion),
        assemble_a5(6, order, A5Route::BernoulliExpansion),
    ) {
        (Ok(a), Ok(b)) => match a.sub(&b) {
            Ok(d) => rec.residual(name, Residual::new(d.iter().map(|(d, s)| (d, s.clone())).collect())),
            Err(e) => rec.error(name, e),
        },
        (Err(e), _) | (_, Err(e)) => rec.error(name, e),
    }
}

fn theta_ode(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(40);
    for which in ThetaWhich::ALL {
        for form in [OdeForm::Factored, OdeForm::Expanded] {
            let name = format!("{which} ODE ({form:?} form), order {order}");
            match theta_ode_residual(which, order, form) {
                Ok(s) => rec.residual(name, Residual::single(s)),
                Err(e) => rec.error(name, e),
            }
        }
    }
}

fn crank(rec: &mut Recorder, p: &SuiteParams) {
    let order = p.order.unwrap_or(20);
    let max_j = p.max_j.unwrap_or(8);
    let name = format!("crank trace identity through w^{max_j}, order {order}");
    match crank_trace_residual(max_j, order) {
        Ok(r) => rec.residual(name, r),
        Err(e) => rec.error(name, e),
    }
    match crank_moments_eisenstein(max_j as u32, order) {
        Ok(e) => {
            for (j, ej) in e.iter().enumerate() {
                let name = format!("j={j} crank moment routes agree, order {order}");
                match crank_moment(j as u32, order, MomentMethod::Combinatorial) {
                    Ok(c) => rec.series_eq(name, ej, &c.series),
                    Err(err) => rec.error(name, err),
                }
            }
        }
        Err(e) => rec.error("crank moments".into(), e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(k: Option<u32>) -> SuiteParams {
        SuiteParams {
            k,
            max_j: Some(4),
            max_n: Some(8),
            max_m: Some(3),
            order: Some(10),
            inject_fault: false,
        }
    }

    #[test]
    fn suite_names() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::EACH {
            let p = if s == Suite::Pde {
                SuiteParams { max_j: Some(2), order: Some(6), ..Default::default() }
            } else {
                small(Some(3))
            };
            let r = run_suite(s, &p);
            assert!(r.passed(), "{r}");
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn faults_are_detected() {
        for s in Suite::EACH {
            let mut p = if s == Suite::Pde {
                SuiteParams { max_j: Some(2), order: Some(6), ..Default::default() }
            } else {
                small(Some(3))
            };
            p.inject_fault = true;
            let r = run_suite(s, &p);
            assert!(!r.passed(), "suite {s} missed the injected fault");
        }
    }

    #[test]
    fn all_is_ordered() {
        let p = SuiteParams { k: Some(3), max_j: Some(2), max_n: Some(6), max_m: Some(2), order: Some(6), inject_fault: false };
        let reports = run(Suite::All, &p);
        let names: Vec<Suite> = reports.iter().map(|r| r.suite).collect();
        assert_eq!(names, Suite::EACH.to_vec());
    }
}
