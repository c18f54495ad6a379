//! The verification suite: independent checks run per canonical group and
//! merged in canonical order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail};
use metacyclic_core::analysis::{
    count_b, formula_ne, max_degree_branch, observed_max_degree, prime_count_report, recover_r, section7_witness,
    sign_count_by_pair_orbits, GroupData,
};
use metacyclic_core::group::{make_group, Group, Presentation, ISOMORPHISM_SEARCH_BOUND};
use metacyclic_core::invariants::{mcinv, pi_sets, sylow_mcinv_consistency, t_subgroup, valid_tuples, MCInv};
use metacyclic_core::numth::prime_factors;
use metacyclic_core::wedderburn::{
    abelianization_invariants, decomposition, perlis_walker, ComponentDescriptor, FixedField,
};
use num_rational::Ratio;
use rayon::prelude::*;

use crate::records::{CheckRecord, GroupReport, McinvRecord, Status};

/// Largest order any command accepts.
pub const MAX_ORDER: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Roundtrip,
    Dimension,
    PerlisWalker,
    RecoverR,
    Degpag,
    CountB,
    CountC,
    Section7,
    IsoOracle,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Roundtrip,
        Check::Dimension,
        Check::PerlisWalker,
        Check::RecoverR,
        Check::Degpag,
        Check::CountB,
        Check::CountC,
        Check::Section7,
        Check::IsoOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Roundtrip => "roundtrip",
            Check::Dimension => "dimension",
            Check::PerlisWalker => "perlis-walker",
            Check::RecoverR => "recoverR",
            Check::Degpag => "degpag",
            Check::CountB => "countB",
            Check::CountC => "countC",
            Check::Section7 => "section7",
            Check::IsoOracle => "iso-oracle",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| anyhow!("unknown check {s:?}; expected one of {}", names(&Check::ALL)))
    }
}

fn names(checks: &[Check]) -> String {
    checks.iter().map(|c| c.name()).collect::<Vec<_>>().join(",")
}

/// Parses a comma list; duplicates collapse and the order is canonical.
pub fn parse_checks(list: &str) -> anyhow::Result<Vec<Check>> {
    let mut out: Vec<Check> = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        bail!("no checks requested");
    }
    Ok(out)
}

/// Every consistent presentation `(m, n, s, t)` with `m n <= max_order`,
/// grouped by order.
pub fn presentations_by_order(max_order: u64) -> BTreeMap<u64, Vec<Presentation>> {
    let mut out: BTreeMap<u64, Vec<Presentation>> = BTreeMap::new();
    for m in 1..=max_order {
        for n in 1..=max_order / m {
            for s in 0..m {
                for t in 0..m {
                    if make_group(m, n, s, t).is_ok() {
                        out.entry(m * n).or_default().push(Presentation { m, n, s, t });
                    }
                }
            }
        }
    }
    out
}

fn int(x: u64) -> Option<i64> {
    Some(x as i64)
}

fn record(check: impl Into<String>, status: Status, lhs: Option<i64>, rhs: Option<i64>) -> CheckRecord {
    CheckRecord {
        check: check.into(),
        status,
        lhs,
        rhs,
        detail: None,
    }
}

fn with_detail(mut r: CheckRecord, detail: impl Into<String>) -> CheckRecord {
    r.detail = Some(detail.into());
    r
}

fn errored(check: impl Into<String>, e: impl fmt::Display) -> CheckRecord {
    with_detail(record(check, Status::Fail, None, None), e.to_string())
}

fn ratio_text(q: Ratio<i64>) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn ratio_int(q: Ratio<i64>) -> Option<i64> {
    q.is_integer().then(|| *q.numer())
}

/// Shared inputs of the checks for one group.
struct Subject<'a> {
    t: &'a MCInv,
    data: GroupData,
    decomp: Vec<ComponentDescriptor>,
}

impl Subject<'_> {
    fn group(&self) -> &Group {
        &self.data.group
    }
}

fn roundtrip(s: &Subject) -> Vec<CheckRecord> {
    match mcinv(s.group()) {
        Ok(back) => {
            let t = s.t;
            let agree = [back.m == t.m, back.n == t.n, back.s == t.s, back.delta == t.delta];
            let held = agree.iter().filter(|&&x| x).count() as u64;
            vec![record("roundtrip", Status::from_bool(held == 4), int(held), int(4))]
        }
        Err(e) => vec![errored("roundtrip", e)],
    }
}

fn dimension(s: &Subject) -> Vec<CheckRecord> {
    let total: u64 = s
        .decomp
        .iter()
        .map(|c| c.total_degree * c.total_degree * c.center.degree())
        .sum();
    let order = s.group().order();
    vec![record("dimension", Status::from_bool(total == order), int(total), int(order))]
}

fn perlis_walker_check(s: &Subject) -> Vec<CheckRecord> {
    let mut observed: BTreeMap<FixedField, u64> = BTreeMap::new();
    for c in s.decomp.iter().filter(|c| c.total_degree == 1) {
        *observed.entry(c.center.clone()).or_default() += 1;
    }
    let mut expected: BTreeMap<FixedField, u64> = BTreeMap::new();
    for (d, count) in perlis_walker(&abelianization_invariants(s.group())) {
        match FixedField::cyclotomic(d) {
            Ok(f) => *expected.entry(f).or_default() += count,
            Err(e) => return vec![errored("perlis-walker", e)],
        }
    }
    let (lhs, rhs) = (observed.values().sum::<u64>(), expected.values().sum::<u64>());
    vec![record("perlis-walker", Status::from_bool(observed == expected), int(lhs), int(rhs))]
}

fn recover_r_check(s: &Subject) -> Vec<CheckRecord> {
    let g = s.group();
    let mpp = s.data.m_pi_prime();
    let derived = g.derived_subgroup(&g.whole());
    let acting = g
        .hall_in(&derived, &pi_sets(g).1)
        .map_err(anyhow::Error::from)
        .and_then(|h| h.ok_or_else(|| anyhow!("no Hall subgroup of G' for pi'")))
        .and_then(|h| t_subgroup(g, &h).map_err(anyhow::Error::from));
    let mut out = Vec::new();
    match (recover_r(&s.decomp, mpp), acting) {
        (Ok(found), Ok(expected)) => {
            let ok = found == expected;
            let r = record("recoverR", Status::from_bool(ok), int(found.order()), int(expected.order()));
            out.push(if ok { r } else { with_detail(r, format!("{found:?} vs {expected:?}")) });
        }
        (Err(e), _) => out.push(errored("recoverR", e)),
        (_, Err(e)) => out.push(errored("recoverR", e)),
    }
    match max_degree_branch(&s.data) {
        Ok(predicted) => {
            let seen = observed_max_degree(&s.decomp, mpp);
            out.push(record(
                "recoverR:max-degree",
                Status::from_bool(seen == Some(predicted)),
                seen.map(|x| x as i64),
                int(predicted),
            ));
        }
        Err(e) => out.push(errored("recoverR:max-degree", e)),
    }
    out
}

fn degpag(s: &Subject) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for p in pi_sets(s.group()).0 {
        let name = format!("degpag:p={p}");
        match sylow_mcinv_consistency(s.group(), p) {
            Ok(clauses) => {
                let held = clauses.iter().filter(|c| c.holds).count() as u64;
                let total = clauses.len() as u64;
                let r = record(name, Status::from_bool(held == total), int(held), int(total));
                let failing: Vec<&str> = clauses.iter().filter(|c| !c.holds).map(|c| c.name).collect();
                out.push(if failing.is_empty() { r } else { with_detail(r, failing.join(" ")) });
            }
            Err(e) => out.push(errored(name, e)),
        }
    }
    if out.is_empty() {
        out.push(record("degpag", Status::NotApplicable, None, None));
    }
    out
}

fn count_b_check(s: &Subject) -> Vec<CheckRecord> {
    let observed = count_b(&s.data, &s.decomp);
    match (formula_ne(&s.data), sign_count_by_pair_orbits(&s.data)) {
        (Ok(None), _) => vec![record("countB", Status::NotApplicable, int(observed), None)],
        (Ok(Some(literal)), Ok(Some(orbits))) => vec![
            record("countB", Status::from_bool(observed == literal), int(observed), int(literal)),
            record("countB:pair-orbits", Status::from_bool(observed == orbits), int(observed), int(orbits)),
        ],
        (Ok(Some(_)), Ok(None)) => vec![errored("countB:pair-orbits", "regime disagreement")],
        (Err(e), _) | (_, Err(e)) => vec![errored("countB", e)],
    }
}

fn count_c_check(s: &Subject) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for p in prime_factors(s.group().order()) {
        match prime_count_report(&s.data, p, &s.decomp) {
            Ok(None) => {}
            Ok(Some(rep)) => {
                let r = record(
                    format!("countC:p={p}"),
                    Status::from_bool(rep.derived_matches()),
                    int(rep.observed),
                    ratio_int(rep.derived),
                );
                out.push(with_detail(r, format!("sums={}", ratio_text(rep.from_sums))));
                let status = if rep.displayed_matches() { Status::Pass } else { Status::Flagged };
                let r = record(format!("countC:displayed:p={p}"), status, int(rep.observed), ratio_int(rep.displayed));
                out.push(with_detail(r, format!("displayed={}", ratio_text(rep.displayed))));
            }
            Err(e) => out.push(errored(format!("countC:p={p}"), e)),
        }
    }
    if out.is_empty() {
        out.push(record("countC", Status::NotApplicable, None, None));
    }
    out
}

fn section7(s: &Subject) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for p in prime_factors(s.group().order()) {
        let name = format!("section7:p={p}");
        match section7_witness(&s.data, p) {
            Ok(None) => {}
            Ok(Some(w)) => {
                let degree = w.component.as_ref().map(|c| c.total_degree as i64);
                let r = record(name, Status::from_bool(w.passes()), degree, int(w.expected_degree));
                out.push(with_detail(r, format!("{:?}", w.case)));
            }
            Err(e) => out.push(errored(name, e)),
        }
    }
    if out.is_empty() {
        out.push(record("section7", Status::NotApplicable, None, None));
    }
    out
}

/// Brute-force isomorphism against every presentation of the same order,
/// compared with equality of invariants.
fn iso_oracle(s: &Subject, presentations: &BTreeMap<u64, Vec<Presentation>>) -> Vec<CheckRecord> {
    let g = s.group();
    if g.order() > ISOMORPHISM_SEARCH_BOUND {
        let r = record("iso-oracle", Status::NotApplicable, None, None);
        return vec![with_detail(r, format!("beyond the search bound {ISOMORPHISM_SEARCH_BOUND}"))];
    }
    let Some(same_order) = presentations.get(&g.order()) else {
        return vec![errored("iso-oracle", "presentations were not enumerated for this order")];
    };
    let (mut iso, mut equal, mut disagree) = (0u64, 0u64, 0u64);
    for p in same_order {
        let outcome = make_group(p.m, p.n, p.s, p.t)
            .map_err(anyhow::Error::from)
            .and_then(|h| Ok((g.brute_force_isomorphic(&h)?, mcinv(&h)? == *s.t)));
        match outcome {
            Ok((a, b)) => {
                iso += a as u64;
                equal += b as u64;
                disagree += (a != b) as u64;
            }
            Err(e) => return vec![errored("iso-oracle", e)],
        }
    }
    vec![record("iso-oracle", Status::from_bool(disagree == 0), int(iso), int(equal))]
}

pub struct VerifyConfig {
    pub max_order: u64,
    pub checks: Vec<Check>,
    pub jobs: Option<usize>,
}

fn verify_one(t: &MCInv, checks: &[Check], presentations: &BTreeMap<u64, Vec<Presentation>>) -> GroupReport {
    let mcinv = McinvRecord::from(t);
    let subject = GroupData::from_mcinv(t)
        .map_err(anyhow::Error::from)
        .and_then(|data| Ok((decomposition(&data.group)?, data)));
    let (decomp, data) = match subject {
        Ok(x) => x,
        Err(e) => {
            return GroupReport {
                mcinv,
                checks: vec![errored("setup", e)],
            }
        }
    };
    let s = Subject { t, data, decomp };
    let mut out = Vec::new();
    for &c in checks {
        out.extend(match c {
            Check::Roundtrip => roundtrip(&s),
            Check::Dimension => dimension(&s),
            Check::PerlisWalker => perlis_walker_check(&s),
            Check::RecoverR => recover_r_check(&s),
            Check::Degpag => degpag(&s),
            Check::CountB => count_b_check(&s),
            Check::CountC => count_c_check(&s),
            Check::Section7 => section7(&s),
            Check::IsoOracle => iso_oracle(&s, presentations),
        });
    }
    GroupReport { mcinv, checks: out }
}

/// Runs the requested checks on every canonical group up to the bound.
/// The output order is that of [`valid_tuples`] whatever the pool width.
pub fn verify(cfg: &VerifyConfig) -> anyhow::Result<Vec<GroupReport>> {
    if cfg.max_order > MAX_ORDER {
        bail!("max order {} exceeds the supported bound {MAX_ORDER}", cfg.max_order);
    }
    let tuples = valid_tuples(cfg.max_order);
    let presentations = if cfg.checks.contains(&Check::IsoOracle) {
        presentations_by_order(cfg.max_order.min(ISOMORPHISM_SEARCH_BOUND))
    } else {
        BTreeMap::new()
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build()?;
    Ok(pool.install(|| {
        tuples
            .par_iter()
            .map(|t| verify_one(t, &cfg.checks, &presentations))
            .collect()
    }))
}

/// Tally of statuses over a run.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Summary {
    pub counts: BTreeMap<(String, Status), u64>,
}

impl Summary {
    pub fn of(reports: &[GroupReport]) -> Self {
        let mut counts = BTreeMap::new();
        for r in reports {
            for c in &r.checks {
                let family = c.check.split(':').next().unwrap_or(&c.check).to_string();
                *counts.entry((family, c.status)).or_default() += 1;
            }
        }
        Self { counts }
    }

    pub fn failures(&self) -> u64 {
        self.counts
            .iter()
            .filter(|((_, s), _)| *s == Status::Fail)
            .map(|(_, n)| n)
            .sum()
    }
}
