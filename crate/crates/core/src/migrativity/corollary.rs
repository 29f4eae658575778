//! Specializations of the characterization when one operand belongs to a
//! named subclass.

use std::fmt;

use serde::Serialize;

use super::conditions::{everywhere, first_failure, piecewise, pivot_agrees, Clause};
use super::{MigrativePair, MigrativityError, MigrativityVerdict, Result, Route};
use crate::operators::{uninorm_neutral, SubclassTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CorollaryItem {
    /// `U₁` a t-norm.
    I,
    /// `U₂` a t-norm.
    II,
    /// `U₁` a t-conorm.
    III,
    /// `U₂` a t-conorm.
    IV,
    /// `U₁` a uninorm.
    V,
    /// `U₁` a nullnorm.
    VI,
    /// `U₁` a uni-nullnorm.
    VII,
    /// `U₁` a null-uninorm.
    VIII,
}

impl CorollaryItem {
    pub const ALL: [CorollaryItem; 8] = [
        CorollaryItem::I,
        CorollaryItem::II,
        CorollaryItem::III,
        CorollaryItem::IV,
        CorollaryItem::V,
        CorollaryItem::VI,
        CorollaryItem::VII,
        CorollaryItem::VIII,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            CorollaryItem::I => "i",
            CorollaryItem::II => "ii",
            CorollaryItem::III => "iii",
            CorollaryItem::IV => "iv",
            CorollaryItem::V => "v",
            CorollaryItem::VI => "vi",
            CorollaryItem::VII => "vii",
            CorollaryItem::VIII => "viii",
        }
    }
}

impl fmt::Display for CorollaryItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

/// The subclass of `U₁` decides first; a general `U₁` falls back to the
/// subclass of `U₂`.
pub fn corollary_shape(tag1: SubclassTag, tag2: SubclassTag) -> Option<CorollaryItem> {
    use SubclassTag::*;
    Some(match tag1 {
        TNorm => CorollaryItem::I,
        TConorm => CorollaryItem::III,
        Uninorm => CorollaryItem::V,
        Nullnorm => CorollaryItem::VI,
        UniNullnorm => CorollaryItem::VII,
        NullUninorm => CorollaryItem::VIII,
        General2Uninorm => match tag2 {
            TNorm => CorollaryItem::II,
            TConorm => CorollaryItem::IV,
            _ => return None,
        },
    })
}

pub fn corollary_dispatch(p: &MigrativePair<'_>) -> Result<MigrativityVerdict> {
    let (tag1, tag2) = (p.u1().tag(), p.u2().tag());
    let item = corollary_shape(tag1, tag2).ok_or(MigrativityError::ShapeMismatch { tag1, tag2 })?;
    let (e1, a1, f1) = p.t1();
    let top = p.top();
    let v = |i: usize| p.point(i).to_string();
    let le = |name: &str, x: usize, bound: &str, y: usize| {
        let holds = x <= y;
        let op = if holds { "<=" } else { ">" };
        (holds, format!("{name}={} {op} {bound}={}", v(x), v(y)))
    };

    let (bullet, cond, clauses): (u8, Option<String>, Vec<Clause>) = match item {
        CorollaryItem::I => (1, None, everywhere(p, p.base(top))),
        CorollaryItem::III => (1, None, everywhere(p, p.base(0))),
        CorollaryItem::V => {
            let eu = uninorm_neutral(p.u1().triple()).expect("uninorm has a neutral element");
            (1, None, everywhere(p, p.base(eu.index() as usize)))
        }
        CorollaryItem::II => {
            let (lam, mu) = (p.base(e1), p.base(f1));
            let (first, c) = le("T(alpha,f)", mu, "a", a1);
            if first {
                (1, Some(c), everywhere(p, lam))
            } else {
                let mut cl = piecewise(p, lam, mu, a1);
                cl.push(pivot_agrees(p, lam, a1, a1, top));
                (2, Some(c), cl)
            }
        }
        CorollaryItem::IV => {
            let (lam, mu) = (p.base(e1), p.base(f1));
            let (first, c) = le("S(alpha,e)", lam, "a", a1);
            if first {
                let mut cl = piecewise(p, lam, mu, a1);
                cl.push(pivot_agrees(p, mu, a1, 0, a1));
                (1, Some(c), cl)
            } else {
                (2, Some(c), everywhere(p, mu))
            }
        }
        CorollaryItem::VI => {
            let (z, o) = (p.base(0), p.base(top));
            let (first, c) = le("U(alpha,0)", z, "a_N", a1);
            if first {
                (1, Some(c), piecewise(p, z, o, a1))
            } else {
                (2, Some(c), everywhere(p, o))
            }
        }
        CorollaryItem::VII => {
            let (pe, o) = (p.base(e1), p.base(top));
            let (first, c) = le("U(alpha,1)", o, "a_F", a1);
            if first {
                (1, Some(c), everywhere(p, pe))
            } else {
                (2, Some(c), piecewise(p, pe, o, a1))
            }
        }
        CorollaryItem::VIII => {
            let (z, pf) = (p.base(0), p.base(f1));
            let (first, c) = le("U(alpha,0)", z, "a_G", a1);
            if first {
                (1, Some(c), piecewise(p, z, pf, a1))
            } else {
                (2, Some(c), everywhere(p, pf))
            }
        }
    };

    let condition_failure = first_failure(p, &clauses);
    let mut case_conditions = vec![format!("U1 is {tag1}, U2 is {tag2}")];
    case_conditions.extend(cond);
    Ok(MigrativityVerdict {
        migrative: condition_failure.is_none(),
        route: Route::Corollary(item, bullet),
        case_conditions,
        witness: None,
        condition_failure,
    })
}
