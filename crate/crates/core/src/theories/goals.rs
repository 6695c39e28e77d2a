//! Named equations with the theory they are posed in and the expected outcome.

use crate::diagram::Diagram;
use crate::dsl::{parse, sweedler};

use super::{comoufang_left, comoufang_right};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// Derivable; `steps` is the known derivation length when fixed.
    Provable { steps: Option<usize> },
    /// Not derivable: the named model satisfies the theory but not the goal.
    Countermodeled { model: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub name: String,
    pub theory: String,
    pub lhs: Diagram,
    pub rhs: Diagram,
    /// Human-readable pointer to where the identity comes from.
    pub locator: String,
    pub expect: Expectation,
}

#[derive(Clone, Debug, Default)]
pub struct GoalSuite {
    pub goals: Vec<Goal>,
}

impl GoalSuite {
    pub fn get(&self, name: &str) -> Option<&Goal> {
        self.goals.iter().find(|g| g.name == name)
    }

    pub fn len(&self) -> usize {
        self.goals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn provable(&self) -> impl Iterator<Item = &Goal> {
        self.goals.iter().filter(|g| matches!(g.expect, Expectation::Provable { .. }))
    }
}

fn sw(text: &str) -> Diagram {
    sweedler(&['x'], text).expect("goal formula")
}

fn d(text: &str) -> Diagram {
    parse(text).expect("goal diagram")
}

/// The standard suite: the counit laws, consequences of the co-Moufang
/// identities, the two co-Moufang identities in both notations, the kernel
/// pair of the operator `T = R - S`, and two goals refuted by finite models.
pub fn goal_suite() -> GoalSuite {
    let mut goals = Vec::new();
    for (name, lhs, locator) in [
        ("counit-left-law", "comul ; counit * id(1)", "counit applied to the first coproduct leg"),
        ("counit-right-law", "comul ; id(1) * counit", "counit applied to the second coproduct leg"),
    ] {
        goals.push(Goal {
            name: name.into(),
            theory: "base".into(),
            lhs: d(lhs),
            rhs: d("id(1)"),
            locator: locator.into(),
            expect: Expectation::Provable { steps: Some(1) },
        });
    }
    let mut provable = |name: &str, lhs: Diagram, rhs: Diagram, locator: &str, steps: Option<usize>| {
        goals.push(Goal {
            name: name.into(),
            theory: "comoufang".into(),
            lhs,
            rhs,
            locator: locator.into(),
            expect: Expectation::Provable { steps },
        })
    };
    let consequences = [
        ("x1 x21 | x22", "x11 x12 | x2", "left co-Moufang with the middle leg counited"),
        ("x11 | x12 x2", "x1 | x21 x22", "right co-Moufang with the middle leg counited"),
        ("x1 x22 | x21", "x11 x2 | x12", "left co-Moufang with the last leg counited"),
        ("x12 | x11 x2", "x21 | x1 x22", "right co-Moufang with the first leg counited"),
        ("x1 x221 | x21 | x222", "x11 x122 | x121 | x2", "left co-Moufang followed by the third consequence"),
        ("x111 | x12 | x112 x2", "x1 | x212 | x211 x22", "right co-Moufang followed by the fourth consequence"),
    ];
    for (k, (l, r, loc)) in consequences.iter().enumerate() {
        provable(&format!("comoufang-{}", k + 1), sw(l), sw(r), loc, None);
    }
    provable(
        "comoufang-l-sweedler",
        sw("x1 x221 | x21 | x222"),
        sw("x111 x12 | x112 | x2"),
        "left co-Moufang identity in Sweedler notation",
        Some(1),
    );
    provable(
        "comoufang-r-sweedler",
        sw("x1 | x221 | x21 x222"),
        sw("x111 | x12 | x112 x2"),
        "right co-Moufang identity in Sweedler notation",
        Some(1),
    );
    let (cl, cr) = comoufang_left();
    provable("comoufang-l-picture", cl, cr, "left co-Moufang identity as drawn", Some(1));
    let (cl, cr) = comoufang_right();
    provable("comoufang-r-picture", cl, cr, "right co-Moufang identity as drawn", Some(1));

    // T = R - S on 3 legs; R(w,y,z) = w1 y | w2 | z and S(x,y,w) = x w1 | y | w2.
    let r = d("comul * id(2) ; id(1) * swap * id(1) ; mul * id(2)");
    let s = d("id(2) * comul ; id(1) * swap * id(1) ; mul * id(2)");
    let c_l = d("comul ; comul * id(1)");
    let c_r = d("comul ; id(1) * comul");
    let then = |a: &Diagram, b: &Diagram| a.compose(b).expect("arity");
    provable(
        "kernel-rl-sr",
        then(&c_l, &r),
        then(&c_r, &s),
        "R applied to the left double coproduct equals S applied to the right one",
        Some(1),
    );
    provable(
        "kernel-sl-rr",
        then(&c_l, &s),
        then(&c_r, &r),
        "S applied to the left double coproduct equals R applied to the right one",
        Some(0),
    );

    goals.push(Goal {
        name: "coassoc".into(),
        theory: "comoufang".into(),
        lhs: c_l,
        rhs: c_r,
        locator: "coassociativity is not implied by the co-Moufang identities".into(),
        expect: Expectation::Countermodeled { model: "function_bialgebra(O16)".into() },
    });
    goals.push(Goal {
        name: "comm".into(),
        theory: "base".into(),
        lhs: d("mul"),
        rhs: d("swap ; mul"),
        locator: "commutativity is not implied by the bialgebra axioms".into(),
        expect: Expectation::Countermodeled { model: "loop_bialgebra(O16)".into() },
    });
    GoalSuite { goals }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_shape() {
        let s = goal_suite();
        assert!(s.len() >= 10);
        let names: std::collections::BTreeSet<_> = s.goals.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names.len(), s.len());
        for g in &s.goals {
            assert_eq!(g.lhs.arity(), g.rhs.arity(), "{}", g.name);
        }
        // drawn and Sweedler forms of the co-Moufang identities coincide
        assert_eq!(s.get("comoufang-l-picture").unwrap().lhs, s.get("comoufang-l-sweedler").unwrap().lhs);
        assert_eq!(s.get("comoufang-r-picture").unwrap().rhs, s.get("comoufang-r-sweedler").unwrap().rhs);
        let k = s.get("kernel-sl-rr").unwrap();
        assert_eq!(k.lhs, k.rhs);
        let k = s.get("kernel-rl-sr").unwrap();
        assert_eq!(k.lhs, s.get("comoufang-l-sweedler").unwrap().rhs);
        assert_eq!(k.rhs, s.get("comoufang-l-sweedler").unwrap().lhs);
    }
}
