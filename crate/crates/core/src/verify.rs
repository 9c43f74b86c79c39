//! Runs every check that applies to one (n, k) and collects the outcomes.

use serde::Serialize;

use crate::closed_form::{theorem1_table, theorem2_table};
use crate::codes::{
    punctured_c1_direct, punctured_c1_weights, weight_distribution, weights_from_values, Code, WeightStrategy,
};
use crate::context::Context;
use crate::distributions::{
    census_matches_closed, empirical_s_distribution, empirical_t_distribution, rank_census, s_report,
    s_slice_distribution, t_report, DistributionReport, SStrategy, Status, TStrategy,
};
use crate::error::{Error, Result};
use crate::exp_sums::{curve_samples, moment_check, rank_law_check, SumKind};
use crate::sequences::{compare_correlation_table, correlation_distribution, CorrStrategy, BRUTE_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    /// Ran, but the closed forms are not claimed for these parameters.
    Uncertified,
    /// Not run: size guard or not applicable.
    Skip,
    /// A closed-form row disagrees with enumeration; informational.
    Erratum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub items: Vec<Item>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, outcome: Outcome, detail: impl Into<String>) {
        self.items.push(Item {
            name: name.into(),
            outcome,
            detail: detail.into(),
        });
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.push(name, if pass { Outcome::Pass } else { Outcome::Fail }, detail);
    }

    /// Records a check that depends on the closed forms.
    fn certify(&mut self, ctx: &Context, name: &str, pass: bool, detail: impl Into<String>) {
        let outcome = match (ctx.params.code_degenerate, pass) {
            (true, _) => Outcome::Uncertified,
            (false, true) => Outcome::Pass,
            (false, false) => Outcome::Fail,
        };
        self.push(name, outcome, detail);
    }

    fn skip_or_fail(&mut self, name: &str, err: Error) {
        match err {
            Error::SizeGuard(_) | Error::Unsupported(_) => self.push(name, Outcome::Skip, err.to_string()),
            other => self.push(name, Outcome::Fail, other.to_string()),
        }
    }

    fn report(&mut self, name: &str, r: Result<DistributionReport>) {
        match r {
            Ok(r) => {
                let outcome = match r.status {
                    Status::Pass => Outcome::Pass,
                    Status::Fail => Outcome::Fail,
                    Status::Uncertified => Outcome::Uncertified,
                };
                self.push(name, outcome, format!("{} diffs", r.diffs.len()));
            }
            Err(e) => self.skip_or_fail(name, e),
        }
    }

    /// Exit status: success only when nothing failed and nothing went uncertified.
    pub fn ok(&self) -> bool {
        self.items
            .iter()
            .all(|i| !matches!(i.outcome, Outcome::Fail | Outcome::Uncertified))
    }

    pub fn lines(&self) -> Vec<String> {
        self.items
            .iter()
            .map(|i| {
                let tag = serde_json::to_value(i.outcome).unwrap();
                let tag = tag.as_str().unwrap();
                if i.detail.is_empty() {
                    format!("{tag:<11} {}", i.name)
                } else {
                    format!("{tag:<11} {}: {}", i.name, i.detail)
                }
            })
            .collect()
    }
}

pub fn verify(ctx: &Context) -> VerifyReport {
    let p = &ctx.params;
    let mut out = VerifyReport::default();
    out.push(
        "parameters",
        Outcome::Pass,
        format!(
            "d={} s={} code_degenerate={} sequence_valid={}",
            p.d, p.s, p.code_degenerate, p.sequence_valid
        ),
    );

    // T
    let t_strategy = if p.s_even { TStrategy::RankFast } else { TStrategy::Naive };
    out.report("T distribution vs closed form", t_report(ctx, t_strategy));
    if p.s_even {
        match (
            empirical_t_distribution(ctx, TStrategy::Naive),
            empirical_t_distribution(ctx, TStrategy::RankFast),
        ) {
            (Ok(a), Ok(b)) => out.check("T naive = rank_fast", a == b, ""),
            (Err(e), _) | (_, Err(e)) => out.skip_or_fail("T naive = rank_fast", e),
        }
        match rank_law_check(ctx) {
            Ok(r) => out.check(
                "T congruence mod 2^d+1 and rank law",
                r.pass(),
                format!("{} pairs, {} / {} failures", r.pairs, r.congruence_failures, r.value_failures),
            ),
            Err(e) => out.skip_or_fail("T congruence mod 2^d+1 and rank law", e),
        }
    }

    // S
    let s_strategy = if p.n <= 8 { SStrategy::Naive } else { SStrategy::Lemma2 };
    out.report("S distribution vs closed form", s_report(ctx, s_strategy));
    if p.n <= 8 {
        match (
            empirical_s_distribution(ctx, SStrategy::Naive),
            empirical_s_distribution(ctx, SStrategy::Lemma2),
        ) {
            (Ok(a), Ok(b)) => out.check("S naive = lemma2", a == b, ""),
            (Err(e), _) | (_, Err(e)) => out.skip_or_fail("S naive = lemma2", e),
        }
    }
    let gammas: Vec<u32> = if p.n <= 6 {
        (2..ctx.q() as u32).collect()
    } else {
        (0..32u64).map(|i| (2 + i * 0x9e37_79b9 % (ctx.q() - 2)) as u32).collect()
    };
    match s_slice_distribution(ctx, 1) {
        Ok(first) => {
            let mut same = true;
            for &g in &gammas {
                match s_slice_distribution(ctx, g) {
                    Ok(d) => same &= d == first,
                    Err(_) => same = false,
                }
            }
            out.check("S slices agree for gamma != 0", same, format!("{} gammas", gammas.len() + 1));
        }
        Err(e) => out.skip_or_fail("S slices agree for gamma != 0", e),
    }

    // moments
    let mut moments: Vec<(SumKind, u32)> = vec![(SumKind::T, 1)];
    if p.s_even {
        moments.extend([(SumKind::T, 2), (SumKind::T, 3)]);
    }
    moments.push((SumKind::S, 3));
    for (kind, order) in moments {
        let name = format!("{kind:?} moment of order {order}");
        match moment_check(ctx, order, kind) {
            Ok(m) => {
                let counted = m
                    .count
                    .as_ref()
                    .map(|c| format!(", {} = {}", c.name, c.counted))
                    .unwrap_or_default();
                out.certify(ctx, &name, m.pass, format!("{}{counted}", m.lhs));
            }
            Err(e) => out.skip_or_fail(&name, e),
        }
    }

    // rank census
    match rank_census(ctx) {
        Ok(c) => {
            let equations = c.equations_hold.unwrap_or(true);
            out.certify(
                ctx,
                "rank census",
                equations && census_matches_closed(ctx, &c),
                format!("{:?}", c.n_i),
            );
        }
        Err(e) => out.skip_or_fail("rank census", e),
    }

    // curve
    match curve_samples(ctx, 20, 0) {
        Ok(samples) => {
            let zero_ok = samples[0].brute == ctx.q() * p.q0;
            let formula_ok = samples.iter().all(|s| s.formula.is_none_or(|f| f == s.brute));
            let detail = if p.s_even { "20 pairs and (0,0)" } else { "(0,0) only; formula needs n/d even" };
            out.check("curve point counts", zero_ok && formula_ok, detail);
        }
        Err(e) => out.skip_or_fail("curve point counts", e),
    }

    // codes
    for (code, limit) in [(Code::C1, 10), (Code::C2, 8)] {
        let name = format!("{code:?} weights: direct = via sums = closed form");
        if p.n > limit && !ctx.allow_large {
            out.push(&name, Outcome::Skip, format!("direct enumeration limited to n <= {limit}"));
            continue;
        }
        let closed = match code {
            Code::C1 => theorem1_table(p),
            Code::C2 => theorem2_table(p),
        }
        .to_distribution(p);
        match (
            weight_distribution(ctx, code, WeightStrategy::Direct),
            weight_distribution(ctx, code, WeightStrategy::ViaSums),
            closed,
        ) {
            (Ok(direct), Ok(via), Ok(closed)) => {
                let from_closed = weights_from_values(ctx, code, &closed);
                let pass =
                    direct.entries == via.entries && direct.entries == from_closed.entries && direct.count(0) == 1;
                out.certify(ctx, &name, pass, format!("dimension {}", direct.dimension));
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => out.skip_or_fail(&name, e),
        }
    }
    if p.s_even && (p.n <= 10 || ctx.allow_large) {
        let name = "punctured C1 weights";
        match weight_distribution(ctx, Code::C1, WeightStrategy::Direct)
            .and_then(|full| punctured_c1_weights(ctx, &full))
            .and_then(|re| punctured_c1_direct(ctx).map(|d| (re, d)))
        {
            Ok((re, direct)) => out.certify(ctx, name, re.entries == direct.entries, format!("length {}", re.length)),
            Err(e) => out.skip_or_fail(name, e),
        }
    }

    // sequences
    if !p.sequence_valid {
        out.push("correlation distribution", Outcome::Skip, "k = n/6 or 5n/6");
        return out;
    }
    let brute_fits = (p.family_size() as u128).pow(2) * ctx.field.order() as u128 <= BRUTE_BUDGET;
    let reduced = correlation_distribution(ctx, CorrStrategy::Reduced);
    if brute_fits || ctx.allow_large {
        match (correlation_distribution(ctx, CorrStrategy::Brute), &reduced) {
            (Ok(b), Ok(r)) => out.check("correlations: brute = reduced", b.entries == r.entries, ""),
            (Err(e), _) => out.skip_or_fail("correlations: brute = reduced", e),
            (_, Err(e)) => out.skip_or_fail("correlations: brute = reduced", e.clone()),
        }
    } else {
        out.push("correlations: brute = reduced", Outcome::Skip, "brute budget exceeded");
    }
    match reduced {
        Ok(dist) => {
            let table = compare_correlation_table(ctx, &dist);
            out.check(
                "correlation total",
                table.total_expected == table.total_observed,
                format!("{}", table.total_observed),
            );
            out.certify(
                ctx,
                "correlation values within the closed-form value set",
                table.values_in_table(),
                format!("{:?}", table.unlisted_values),
            );
            for e in &table.errata {
                out.push(
                    &format!("correlation table row {}", e.row),
                    if table.certified { Outcome::Erratum } else { Outcome::Uncertified },
                    format!(
                        "table {} vs enumerated {}; corrected form {} ({})",
                        e.closed,
                        e.observed,
                        e.corrected,
                        if e.corrected_matches { "matches" } else { "differs" }
                    ),
                );
            }
            match table.reference_cmax {
                Some(r) => out.certify(ctx, "cmax matches reference", table.cmax == r, format!("{} vs {r}", table.cmax)),
                None => out.push("cmax", Outcome::Pass, format!("{}", table.cmax)),
            }
        }
        Err(e) => out.skip_or_fail("correlation distribution", e),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n5_verifies() {
        let r = verify(&Context::new(5, 1).unwrap());
        assert!(r.ok(), "{:#?}", r.lines());
        assert!(r.items.iter().any(|i| i.outcome == Outcome::Erratum));
    }

    #[test]
    fn degenerate_is_uncertified() {
        let r = verify(&Context::new(6, 1).unwrap());
        assert!(!r.ok());
        assert!(r.items.iter().any(|i| i.outcome == Outcome::Uncertified));
        assert!(!r.items.iter().any(|i| i.outcome == Outcome::Fail), "{:#?}", r.lines());
    }
}
