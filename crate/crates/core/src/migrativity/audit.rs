//! Side-by-side comparison of brute force against every characterization,
//! plus the auxiliary implications, over many instances.

use std::collections::BTreeMap;

use serde::Serialize;

use super::lemmas::{check_lemma31, check_lemma32, check_post_definition_identity, check_prop31, check_prop33};
use super::{
    brute_force_migrative, characterize_case, classify_case_thm31, classify_case_thm32, corollary_dispatch,
    is_migrative, Case, ConditionFailure, CorollaryItem, DispatchMode, EquationWitness, MigrativePair, Outcome,
    Route, Theorem,
};
use crate::grid::GridPoint;

/// Disagreement and violation lists keep at most this many entries; the
/// counters are always exact.
pub const MAX_LISTED: usize = 1000;

/// Identifies an instance inside a batch: positions of `U₁` and `U₂` in the
/// caller's operator list and the index of `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairId {
    pub u1: usize,
    pub u2: usize,
    pub alpha: u32,
}

/// Everything computed for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairAudit {
    pub brute: bool,
    /// Every applicable case of the `λ` split with its verdict.
    pub thm31: Vec<(Case, bool)>,
    pub thm32: Vec<(Case, bool)>,
    pub corollary: Option<(CorollaryItem, u8, bool)>,
    pub lemma31: Outcome,
    pub lemma32: Outcome,
    pub prop31: Outcome,
    pub prop33: Outcome,
    pub post_identity: Outcome,
    /// `λ ≤ μ`, which monotonicity of `U₂` forces.
    pub pivot_order: bool,
}

pub fn audit_pair(p: &MigrativePair<'_>) -> PairAudit {
    let brute = is_migrative(p);
    let cases = |theorem: Theorem| {
        let sel = match theorem {
            Theorem::Lambda => classify_case_thm31(p, DispatchMode::Audit),
            Theorem::Mu => classify_case_thm32(p, DispatchMode::Audit),
        };
        sel.applicable
            .into_iter()
            .map(|c| (c, characterize_case(p, theorem, c).expect("case applies").migrative))
            .collect()
    };
    let corollary = corollary_dispatch(p).ok().map(|v| match v.route {
        Route::Corollary(item, bullet) => (item, bullet, v.migrative),
        _ => unreachable!("corollary route"),
    });
    PairAudit {
        brute,
        thm31: cases(Theorem::Lambda),
        thm32: cases(Theorem::Mu),
        corollary,
        lemma31: check_lemma31(p).outcome(),
        lemma32: check_lemma32(p).map_or(Outcome::NotApplicable, |r| r.outcome()),
        prop31: check_prop31(p).outcome(),
        prop33: check_prop33(p).outcome(),
        post_identity: check_post_definition_identity(p).outcome(),
        pivot_order: {
            let (l, m) = p.lm();
            l <= m
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DisagreementKind {
    Thm31(Case),
    Thm32(Case),
    Corollary(CorollaryItem, u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub pair: PairId,
    pub alpha: GridPoint,
    pub triple1: String,
    pub triple2: String,
    pub kind: DisagreementKind,
    pub brute: bool,
    pub characterization: bool,
    pub witness: Option<EquationWitness>,
    pub condition_failure: Option<ConditionFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    Lemma31,
    Lemma32,
    Prop31,
    Prop33,
    PostIdentity,
    PivotOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: PairId,
    pub alpha: GridPoint,
    pub triple1: String,
    pub triple2: String,
    pub kind: ViolationKind,
    /// The failing item and the values involved.
    pub detail: String,
}

fn violation_detail(p: &MigrativePair<'_>, kind: ViolationKind) -> String {
    let failing = |r: super::LemmaReport| {
        r.items
            .into_iter()
            .filter(|i| !i.holds())
            .map(|i| format!("{}: {}", i.label, i.detail))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let prop = |c: super::PropCheck| {
        c.items
            .into_iter()
            .filter(|i| i.brute != i.condition)
            .map(|i| format!("{}: brute={}, condition={}", i.label, i.brute, i.condition))
            .collect::<Vec<_>>()
            .join("; ")
    };
    match kind {
        ViolationKind::Lemma31 => failing(check_lemma31(p)),
        ViolationKind::Lemma32 => check_lemma32(p).map(failing).unwrap_or_default(),
        ViolationKind::Prop31 => prop(check_prop31(p)),
        ViolationKind::Prop33 => prop(check_prop33(p)),
        ViolationKind::PostIdentity => failing(check_post_definition_identity(p)),
        ViolationKind::PivotOrder => {
            let (l, m) = p.lm();
            format!("lambda={} > mu={}", p.point(l), p.point(m))
        }
    }
}

/// Counts for a checked claim: instances seen, instances where it applied,
/// and instances where it failed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub applicable: u64,
    pub violations: u64,
}

impl Tally {
    fn add(&mut self, o: Outcome) {
        self.checked += 1;
        match o {
            Outcome::NotApplicable => {}
            Outcome::Holds => self.applicable += 1,
            Outcome::Violated => {
                self.applicable += 1;
                self.violations += 1;
            }
        }
    }

    fn merge(&mut self, o: &Tally) {
        self.checked += o.checked;
        self.applicable += o.applicable;
        self.violations += o.violations;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub pairs: u64,
    pub migrative: u64,
    /// Instances where more than one case of the split applied.
    pub thm31_boundary: u64,
    pub thm32_boundary: u64,
    pub thm31: Tally,
    pub thm32: Tally,
    pub corollary: BTreeMap<String, Tally>,
    pub lemma31: Tally,
    pub lemma32: Tally,
    pub prop31: Tally,
    pub prop33: Tally,
    pub post_identity: Tally,
    pub pivot_order: Tally,
    pub disagreement_count: u64,
    pub disagreements: Vec<Disagreement>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.disagreement_count == 0 && self.violation_count == 0
    }

    /// Adds one instance.
    pub fn record(&mut self, id: PairId, p: &MigrativePair<'_>) {
        let a = audit_pair(p);
        self.pairs += 1;
        self.migrative += a.brute as u64;
        self.thm31_boundary += (a.thm31.len() > 1) as u64;
        self.thm32_boundary += (a.thm32.len() > 1) as u64;

        let mut found = Vec::new();
        for (theorem, cases) in [(Theorem::Lambda, &a.thm31), (Theorem::Mu, &a.thm32)] {
            let tally = match theorem {
                Theorem::Lambda => &mut self.thm31,
                Theorem::Mu => &mut self.thm32,
            };
            for &(case, verdict) in cases {
                let ok = verdict == a.brute;
                tally.add(if ok { Outcome::Holds } else { Outcome::Violated });
                if !ok {
                    let kind = match theorem {
                        Theorem::Lambda => DisagreementKind::Thm31(case),
                        Theorem::Mu => DisagreementKind::Thm32(case),
                    };
                    let v = characterize_case(p, theorem, case).expect("case applies");
                    found.push((kind, verdict, v.condition_failure));
                }
            }
        }
        if let Some((item, bullet, verdict)) = a.corollary {
            let ok = verdict == a.brute;
            self.corollary
                .entry(item.roman().to_string())
                .or_default()
                .add(if ok { Outcome::Holds } else { Outcome::Violated });
            if !ok {
                let v = corollary_dispatch(p).expect("shape matched");
                found.push((DisagreementKind::Corollary(item, bullet), verdict, v.condition_failure));
            }
        }

        let (t1, t2) = (p.u1().triple().to_string(), p.u2().triple().to_string());
        if !found.is_empty() {
            let witness = brute_force_migrative(p).witness;
            for (kind, characterization, condition_failure) in found {
                self.disagreement_count += 1;
                if self.disagreements.len() < MAX_LISTED {
                    self.disagreements.push(Disagreement {
                        pair: id,
                        alpha: p.alpha(),
                        triple1: t1.clone(),
                        triple2: t2.clone(),
                        kind,
                        brute: a.brute,
                        characterization,
                        witness,
                        condition_failure,
                    });
                }
            }
        }

        for (kind, outcome, tally) in [
            (ViolationKind::Lemma31, a.lemma31, &mut self.lemma31),
            (ViolationKind::Lemma32, a.lemma32, &mut self.lemma32),
            (ViolationKind::Prop31, a.prop31, &mut self.prop31),
            (ViolationKind::Prop33, a.prop33, &mut self.prop33),
            (ViolationKind::PostIdentity, a.post_identity, &mut self.post_identity),
            (
                ViolationKind::PivotOrder,
                if a.pivot_order { Outcome::Holds } else { Outcome::Violated },
                &mut self.pivot_order,
            ),
        ] {
            tally.add(outcome);
            if outcome == Outcome::Violated {
                self.violation_count += 1;
                if self.violations.len() < MAX_LISTED {
                    self.violations.push(Violation {
                        pair: id,
                        alpha: p.alpha(),
                        triple1: t1.clone(),
                        triple2: t2.clone(),
                        kind,
                        detail: violation_detail(p, kind),
                    });
                }
            }
        }
    }

    /// Appends `other`, which must cover instances after those in `self`.
    pub fn merge(&mut self, other: AuditReport) {
        self.pairs += other.pairs;
        self.migrative += other.migrative;
        self.thm31_boundary += other.thm31_boundary;
        self.thm32_boundary += other.thm32_boundary;
        self.thm31.merge(&other.thm31);
        self.thm32.merge(&other.thm32);
        for (k, t) in &other.corollary {
            self.corollary.entry(k.clone()).or_default().merge(t);
        }
        self.lemma31.merge(&other.lemma31);
        self.lemma32.merge(&other.lemma32);
        self.prop31.merge(&other.prop31);
        self.prop33.merge(&other.prop33);
        self.post_identity.merge(&other.post_identity);
        self.pivot_order.merge(&other.pivot_order);
        self.disagreement_count += other.disagreement_count;
        let room = MAX_LISTED.saturating_sub(self.disagreements.len());
        self.disagreements.extend(other.disagreements.into_iter().take(room));
        self.violation_count += other.violation_count;
        let room = MAX_LISTED.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }
}

/// Audits every instance in order.
pub fn equivalence_audit<'a>(pairs: impl IntoIterator<Item = (PairId, MigrativePair<'a>)>) -> AuditReport {
    let mut report = AuditReport::default();
    for (id, p) in pairs {
        report.record(id, &p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn example_pair_audit_is_clean() {
        let (u1, u2) = example_pair(20);
        let ops = [&u1, &u2];
        let report = equivalence_audit((0..2).flat_map(|i| {
            (0..2).flat_map(move |j| {
                (0..=20).map(move |k| {
                    let id = PairId { u1: i, u2: j, alpha: k };
                    (id, MigrativePair::new(ops[i], ops[j], at(20, k)).unwrap())
                })
            })
        }));
        assert_eq!(report.pairs, 84);
        assert_eq!(report.disagreement_count, 0, "{:?}", report.disagreements);
        assert!(report.violations.iter().all(|v| v.kind == ViolationKind::Lemma31));
        assert!(report.migrative > 0 && report.migrative < 84);
        assert!(report.thm31.checked >= 84 + report.thm31_boundary);
    }

    #[test]
    fn merge_matches_single_pass() {
        let (u1, u2) = example_pair(10);
        let items: Vec<_> = (0..=10)
            .map(|k| (PairId { u1: 0, u2: 1, alpha: k }, MigrativePair::new(&u1, &u2, at(10, k)).unwrap()))
            .collect();
        let whole = equivalence_audit(items.iter().copied());
        let mut left = equivalence_audit(items[..4].iter().copied());
        left.merge(equivalence_audit(items[4..].iter().copied()));
        assert_eq!(whole, left);
    }
}
