//! Auxiliary implications between `λ`, `μ`, the triple of `U₁` and
//! migrativity, checked instance by instance.

use serde::Serialize;

use super::conditions::{everywhere, first_failure, Clause};
use super::theorems::case_clauses;
use super::{is_migrative, Case, MigrativePair, MigrativityError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    NotApplicable,
    Holds,
    Violated,
}

/// `premise ⇒ conclusion` evaluated on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub label: &'static str,
    pub premise: bool,
    pub conclusion: bool,
    pub detail: String,
}

impl Implication {
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub items: Vec<Implication>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.items.iter().all(Implication::holds)
    }

    pub fn outcome(&self) -> Outcome {
        if !self.items.iter().any(|i| i.premise) {
            Outcome::NotApplicable
        } else if self.holds() {
            Outcome::Holds
        } else {
            Outcome::Violated
        }
    }
}

/// `λ ≤ e₁ ⇒ μ ≤ f₁` and `μ ≥ f₁ ⇒ λ ≥ e₁`. Needs no migrativity.
pub fn check_lemma31(p: &MigrativePair<'_>) -> LemmaReport {
    let (e1, _, f1) = p.t1();
    let (l, m) = p.lm();
    let detail = format!("lambda={}, mu={}, e1={}, f1={}", p.point(l), p.point(m), p.point(e1), p.point(f1));
    LemmaReport {
        items: vec![
            Implication {
                label: "lambda <= e1 implies mu <= f1",
                premise: l <= e1,
                conclusion: m <= f1,
                detail: detail.clone(),
            },
            Implication {
                label: "mu >= f1 implies lambda >= e1",
                premise: m >= f1,
                conclusion: l >= e1,
                detail,
            },
        ],
    }
}

/// For a migrative instance: `λ ∈ [e₁, a₁] ⇒ U₂(α, a₁) ≥ a₁` and
/// `μ ∈ [a₁, f₁] ⇒ U₂(α, a₁) ≤ a₁`.
pub fn check_lemma32(p: &MigrativePair<'_>) -> Result<LemmaReport> {
    if !is_migrative(p) {
        return Err(MigrativityError::PreconditionViolated(format!(
            "U1 is not (alpha, U2)-migrative at alpha = {}",
            p.alpha()
        )));
    }
    let (e1, a1, f1) = p.t1();
    let (l, m) = p.lm();
    let ua = p.base(a1);
    let detail = format!(
        "lambda={}, mu={}, U2(alpha,a1)={}, a1={}",
        p.point(l),
        p.point(m),
        p.point(ua),
        p.point(a1)
    );
    Ok(LemmaReport {
        items: vec![
            Implication {
                label: "lambda in [e1, a1] implies U2(alpha, a1) >= a1",
                premise: e1 <= l && l <= a1,
                conclusion: ua >= a1,
                detail: detail.clone(),
            },
            Implication {
                label: "mu in [a1, f1] implies U2(alpha, a1) <= a1",
                premise: a1 <= m && m <= f1,
                conclusion: ua <= a1,
                detail,
            },
        ],
    })
}

/// One applicable item of an equivalence claim: brute force against the
/// stated condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropItem {
    pub label: &'static str,
    pub brute: bool,
    pub condition: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropCheck {
    pub items: Vec<PropItem>,
}

impl PropCheck {
    pub fn outcome(&self) -> Outcome {
        if self.items.is_empty() {
            Outcome::NotApplicable
        } else if self.items.iter().all(|i| i.brute == i.condition) {
            Outcome::Holds
        } else {
            Outcome::Violated
        }
    }
}

fn prop(p: &MigrativePair<'_>, items: [(&'static str, bool, Vec<Clause>); 2]) -> PropCheck {
    let mut brute = None;
    let items = items
        .into_iter()
        .filter(|(_, applies, _)| *applies)
        .map(|(label, _, clauses)| PropItem {
            label,
            brute: *brute.get_or_insert_with(|| is_migrative(p)),
            condition: first_failure(p, &clauses).is_none(),
        })
        .collect();
    PropCheck { items }
}

/// `λ ≥ a₁`: migrative iff `U₁(μ, x) = U₂(α, x)`.
/// `μ ≤ a₁`: migrative iff `U₁(λ, x) = U₂(α, x)`.
pub fn check_prop31(p: &MigrativePair<'_>) -> PropCheck {
    let (_, a1, _) = p.t1();
    let (l, m) = p.lm();
    prop(
        p,
        [
            ("lambda >= a1", l >= a1, everywhere(p, m)),
            ("mu <= a1", m <= a1, everywhere(p, l)),
        ],
    )
}

/// `λ ∈ [e₁, a₁]`: migrative iff the piecewise condition and
/// `U₁(μ, x) = U₁(a₁, x)` on `[0, a₁]`.
/// `μ ∈ [a₁, f₁]`: migrative iff the piecewise condition and
/// `U₁(λ, x) = U₁(a₁, x)` on `[a₁, 1]`.
pub fn check_prop33(p: &MigrativePair<'_>) -> PropCheck {
    let (e1, a1, f1) = p.t1();
    let (l, m) = p.lm();
    prop(
        p,
        [
            ("lambda in [e1, a1]", e1 <= l && l <= a1, case_clauses(p, Case::III)),
            ("mu in [a1, f1]", a1 <= m && m <= f1, case_clauses(p, Case::II)),
        ],
    )
}

/// For a migrative instance, `U₂(α, x) = U₁(x, λ)` wherever `U₂(α, x) ≤ a₁`
/// and `U₂(α, x) = U₁(x, μ)` wherever `U₂(α, x) ≥ a₁`.
pub fn check_post_definition_identity(p: &MigrativePair<'_>) -> LemmaReport {
    let (_, a1, _) = p.t1();
    let (l, m) = p.lm();
    let premise = is_migrative(p);
    let failure = (0..=p.top()).find(|&x| {
        let b = p.base(x);
        (b <= a1 && b != p.op1(x, l)) || (b >= a1 && b != p.op1(x, m))
    });
    let detail = match failure {
        Some(x) => format!(
            "x={}: U2(alpha,x)={}, U1(x,lambda)={}, U1(x,mu)={}",
            p.point(x),
            p.point(p.base(x)),
            p.point(p.op1(x, l)),
            p.point(p.op1(x, m))
        ),
        None => String::new(),
    };
    LemmaReport {
        items: vec![Implication {
            label: "migrative implies U2(alpha,x) = U1(x, lambda or mu)",
            premise,
            conclusion: failure.is_none(),
            detail,
        }],
    }
}
