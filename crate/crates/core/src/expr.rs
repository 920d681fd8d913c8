//! Small expression AST for elements of finitely presented Lie rings.
//!
//! Presentations store relators structurally (left side = right side); the
//! same tree evaluates in the truncated free ring, in a nilpotent quotient,
//! or into the associative envelope, through [`LieEval`].

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LieExpr {
    Zero,
    /// Generator by index into the presentation's generator list.
    Gen(usize),
    Scaled(BigInt, Box<LieExpr>),
    Sum(Vec<LieExpr>),
    /// Left-normed bracket of two or more arguments.
    Bracket(Vec<LieExpr>),
}

impl LieExpr {
    pub fn gen(i: usize) -> Self {
        LieExpr::Gen(i)
    }

    pub fn scaled(k: impl Into<BigInt>, e: LieExpr) -> Self {
        let k = k.into();
        if k == BigInt::one() {
            e
        } else {
            LieExpr::Scaled(k, Box::new(e))
        }
    }

    pub fn sum(terms: Vec<LieExpr>) -> Self {
        match terms.len() {
            0 => LieExpr::Zero,
            1 => terms.into_iter().next().unwrap(),
            _ => LieExpr::Sum(terms),
        }
    }

    pub fn bracket(args: Vec<LieExpr>) -> Self {
        debug_assert!(args.len() >= 2);
        LieExpr::Bracket(args)
    }

    /// Generator indices referenced anywhere in the expression.
    pub fn gens_used(&self, out: &mut Vec<usize>) {
        match self {
            LieExpr::Zero => {}
            LieExpr::Gen(i) => out.push(*i),
            LieExpr::Scaled(_, e) => e.gens_used(out),
            LieExpr::Sum(ts) | LieExpr::Bracket(ts) => {
                for t in ts {
                    t.gens_used(out);
                }
            }
        }
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.fmt_into(names, &mut s, false);
        s
    }

    fn fmt_into(&self, names: &[String], out: &mut String, parens: bool) {
        match self {
            LieExpr::Zero => out.push('0'),
            LieExpr::Gen(i) => out.push_str(&names[*i]),
            LieExpr::Scaled(k, e) => {
                out.push_str(&alloc::format!("{k}*"));
                e.fmt_into(names, out, true);
            }
            LieExpr::Sum(ts) => {
                if parens {
                    out.push('(');
                }
                for (n, t) in ts.iter().enumerate() {
                    if n > 0 {
                        out.push_str(" + ");
                    }
                    t.fmt_into(names, out, true);
                }
                if parens {
                    out.push(')');
                }
            }
            LieExpr::Bracket(ts) => {
                out.push('[');
                for (n, t) in ts.iter().enumerate() {
                    if n > 0 {
                        out.push(',');
                    }
                    t.fmt_into(names, out, false);
                }
                out.push(']');
            }
        }
    }
}

/// Evaluation of [`LieExpr`] into any Z-Lie-algebra carrier.
pub trait LieEval {
    type Elem: Clone;

    fn zero_elem(&self) -> Self::Elem;
    fn gen_elem(&self, idx: usize) -> Self::Elem;
    fn add_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale_elem(&self, k: &BigInt, a: &Self::Elem) -> Self::Elem;
    fn bracket_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn eval(&self, e: &LieExpr) -> Self::Elem {
        match e {
            LieExpr::Zero => self.zero_elem(),
            LieExpr::Gen(i) => self.gen_elem(*i),
            LieExpr::Scaled(k, inner) => self.scale_elem(k, &self.eval(inner)),
            LieExpr::Sum(ts) => {
                let mut acc = self.zero_elem();
                for t in ts {
                    acc = self.add_elem(&acc, &self.eval(t));
                }
                acc
            }
            LieExpr::Bracket(ts) => {
                let mut acc = self.eval(&ts[0]);
                for t in &ts[1..] {
                    acc = self.bracket_elem(&acc, &self.eval(t));
                }
                acc
            }
        }
    }
}

/// A relator `lhs = rhs`; its value is `lhs - rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relator {
    pub lhs: LieExpr,
    pub rhs: LieExpr,
}

impl Relator {
    pub fn value_in<E: LieEval>(&self, ring: &E) -> E::Elem {
        let l = ring.eval(&self.lhs);
        let r = ring.eval(&self.rhs);
        ring.add_elem(&l, &ring.scale_elem(&BigInt::from(-1), &r))
    }
}
