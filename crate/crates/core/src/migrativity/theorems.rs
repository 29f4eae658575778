//! Case-split characterizations keyed on `λ` and on `μ`.

use std::fmt;

use serde::Serialize;

use super::conditions::{everywhere, first_failure, piecewise, pivot_agrees, Clause};
use super::{MigrativePair, MigrativityError, MigrativityVerdict, Result, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    I,
    II,
    III,
    IV,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::I, Case::II, Case::III, Case::IV];

    pub fn roman(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IV => "iv",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

/// Which pivot the case split is keyed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    /// Cases split on `λ = U₂(α, e₁)`.
    Lambda,
    /// Cases split on `μ = U₂(α, f₁)`.
    Mu,
}

impl Theorem {
    fn route(self, case: Case) -> Route {
        match self {
            Theorem::Lambda => Route::Thm31(case),
            Theorem::Mu => Route::Thm32(case),
        }
    }
}

/// `Normal` stops at the first applicable case; `Audit` collects all of them,
/// which matters only on boundaries such as `λ = a₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DispatchMode {
    Normal,
    Audit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSelection {
    pub theorem: Theorem,
    pub applicable: Vec<Case>,
}

impl CaseSelection {
    pub fn first(&self) -> Case {
        self.applicable[0]
    }

    pub fn is_boundary(&self) -> bool {
        self.applicable.len() > 1
    }
}

/// The inequalities defining `case`, rendered with their values, and whether
/// they all hold.
pub(crate) fn case_test(p: &MigrativePair<'_>, theorem: Theorem, case: Case) -> (bool, Vec<String>) {
    let (e1, a1, f1) = p.t1();
    let (l, m) = p.lm();
    let v = |i: usize| p.point(i).to_string();
    let le = |x: usize, xn: &str, y: usize, yn: &str| (x <= y, format!("{xn}={} <= {yn}={}", v(x), v(y)));
    let ge = |x: usize, xn: &str, y: usize, yn: &str| (x >= y, format!("{xn}={} >= {yn}={}", v(x), v(y)));
    let parts = match (theorem, case) {
        (Theorem::Lambda, Case::I) => vec![le(l, "lambda", e1, "e1"), le(m, "mu", a1, "a1")],
        (Theorem::Lambda, Case::II) => vec![le(l, "lambda", e1, "e1"), ge(m, "mu", a1, "a1")],
        (Theorem::Lambda, Case::III) => vec![ge(l, "lambda", e1, "e1"), le(l, "lambda", a1, "a1")],
        (Theorem::Lambda, Case::IV) => vec![ge(l, "lambda", a1, "a1")],
        (Theorem::Mu, Case::I) => vec![le(m, "mu", a1, "a1")],
        (Theorem::Mu, Case::II) => vec![ge(m, "mu", a1, "a1"), le(m, "mu", f1, "f1")],
        (Theorem::Mu, Case::III) => vec![ge(m, "mu", f1, "f1"), le(l, "lambda", a1, "a1")],
        (Theorem::Mu, Case::IV) => vec![ge(m, "mu", f1, "f1"), ge(l, "lambda", a1, "a1")],
    };
    let holds = parts.iter().all(|(b, _)| *b);
    (holds, parts.into_iter().map(|(_, s)| s).collect())
}

fn classify(p: &MigrativePair<'_>, theorem: Theorem, mode: DispatchMode) -> CaseSelection {
    let mut applicable = Vec::new();
    for case in Case::ALL {
        if case_test(p, theorem, case).0 {
            applicable.push(case);
            if mode == DispatchMode::Normal {
                break;
            }
        }
    }
    // The four cases cover every position of the pivot.
    assert!(!applicable.is_empty(), "case split is not total at alpha = {}", p.alpha());
    CaseSelection { theorem, applicable }
}

pub fn classify_case_thm31(p: &MigrativePair<'_>, mode: DispatchMode) -> CaseSelection {
    classify(p, Theorem::Lambda, mode)
}

pub fn classify_case_thm32(p: &MigrativePair<'_>, mode: DispatchMode) -> CaseSelection {
    classify(p, Theorem::Mu, mode)
}

/// Both theorems attach the same condition to the same case number.
pub(crate) fn case_clauses(p: &MigrativePair<'_>, case: Case) -> Vec<Clause> {
    let (_, a1, _) = p.t1();
    let (l, m) = p.lm();
    match case {
        Case::I => everywhere(p, l),
        Case::II => {
            let mut c = piecewise(p, l, m, a1);
            c.push(pivot_agrees(p, l, a1, a1, p.top()));
            c
        }
        Case::III => {
            let mut c = piecewise(p, l, m, a1);
            c.push(pivot_agrees(p, m, a1, 0, a1));
            c
        }
        Case::IV => everywhere(p, m),
    }
}

/// Evaluates the condition of `case` regardless of whether it is the one the
/// normal dispatch would choose. Fails if the case does not apply.
pub fn characterize_case(p: &MigrativePair<'_>, theorem: Theorem, case: Case) -> Result<MigrativityVerdict> {
    let (holds, case_conditions) = case_test(p, theorem, case);
    if !holds {
        return Err(MigrativityError::PreconditionViolated(format!(
            "case {case} does not apply: {}",
            case_conditions.join(", ")
        )));
    }
    let condition_failure = first_failure(p, &case_clauses(p, case));
    Ok(MigrativityVerdict {
        migrative: condition_failure.is_none(),
        route: theorem.route(case),
        case_conditions,
        witness: None,
        condition_failure,
    })
}

fn characterize(p: &MigrativePair<'_>, theorem: Theorem) -> MigrativityVerdict {
    let case = classify(p, theorem, DispatchMode::Normal).first();
    characterize_case(p, theorem, case).expect("selected case applies")
}

pub fn characterize_thm31(p: &MigrativePair<'_>) -> MigrativityVerdict {
    characterize(p, Theorem::Lambda)
}

pub fn characterize_thm32(p: &MigrativePair<'_>) -> MigrativityVerdict {
    characterize(p, Theorem::Mu)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{brute_force_migrative, Term};
    use super::*;

    #[test]
    fn lambda_split_examples() {
        let (u1, u2) = example_pair(10);
        let p = MigrativePair::new(&u1, &u2, at(10, 4)).unwrap();
        let v = characterize_thm31(&p);
        assert_eq!(v.route, Route::Thm31(Case::III));
        assert!(!v.migrative);
        let fail = v.condition_failure.unwrap();
        assert_eq!(fail.x, at(10, 6));
        assert_eq!((fail.lhs, fail.rhs), (at(10, 5), at(10, 6)));
        assert_eq!(fail.clause.lhs, Term::Base);
        assert!(fail.recheck(&p));
        assert!(!brute_force_migrative(&p).migrative);

        let p = MigrativePair::new(&u1, &u2, at(10, 9)).unwrap();
        let v = characterize_thm31(&p);
        assert_eq!(v.route, Route::Thm31(Case::IV));
        assert!(v.migrative);
        assert!(brute_force_migrative(&p).migrative);
    }

    #[test]
    fn mu_split_examples() {
        let (u1, u2) = example_pair(10);
        // alpha = 0: lambda = 0 and mu = 0.8 = f1, so cases (ii) and (iii) both
        // apply; normal dispatch takes (ii).
        let p = MigrativePair::new(&u1, &u2, at(10, 0)).unwrap();
        let v = characterize_thm32(&p);
        assert_eq!(v.route, Route::Thm32(Case::II));
        assert!(!v.migrative);
        let s = classify_case_thm32(&p, DispatchMode::Audit);
        assert_eq!(s.applicable, vec![Case::II, Case::III]);
        for case in s.applicable {
            let v = characterize_case(&p, Theorem::Mu, case).unwrap();
            assert!(!v.migrative);
            // First failing point: U2(0, 0.3) = 0 but U1(lambda, 0.3) = 0.3.
            let fail = v.condition_failure.unwrap();
            assert_eq!((fail.x, fail.lhs, fail.rhs), (at(10, 3), at(10, 0), at(10, 3)));
        }
        // The point exhibited in the worked example: U2(0, 0.6) = 0.5 but U1(mu, 0.6) = 0.6.
        assert_eq!(u2.table().get(0, 6), 5);
        assert_eq!(u1.table().get(8, 6), 6);
    }

    #[test]
    fn boundary_collects_every_case() {
        // alpha = 0.7 gives lambda = 0.5 and mu = 0.8 = f1.
        let (u1, u2) = example_pair(10);
        let p = MigrativePair::new(&u1, &u2, at(10, 7)).unwrap();
        let s = classify_case_thm32(&p, DispatchMode::Audit);
        assert_eq!(s.applicable, vec![Case::II, Case::III]);
        assert!(s.is_boundary());
        for case in s.applicable {
            assert!(characterize_case(&p, Theorem::Mu, case).unwrap().migrative);
        }
        assert!(characterize_case(&p, Theorem::Mu, Case::I).is_err());
    }

    #[test]
    fn min_is_migrative_along_both_splits() {
        let m = min_op(12);
        for i in 0..=12 {
            let p = MigrativePair::new(&m, &m, at(12, i)).unwrap();
            assert!(characterize_thm31(&p).migrative);
            assert!(characterize_thm32(&p).migrative);
        }
    }
}
