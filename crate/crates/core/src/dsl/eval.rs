use std::collections::HashMap;

use super::ast::{Anchors, Definition, GermExpr};
use super::DslError;
use crate::constructions::{
    arithmetic, compose, diagonal_below, invert, minorize_to_pl, pinch, switch, AnchorSeq, ArithOp, Family,
};
use crate::error::{GermError, Result};
use crate::germ::{CodeGen, Germ, PlGerm, Profile, RatGerm, Tier};

/// Germs of a germ file by name, evaluated on demand.
#[derive(Debug, Clone)]
pub struct Env {
    defs: Vec<Definition>,
    horizon: u64,
    done: HashMap<String, Germ>,
}

fn closed(code: &crate::germ::RatExpr) -> Result<crate::germ::ExpPoly> {
    code.to_expoly().map_err(GermError::NotCertifiable)
}

fn need_pl(g: Germ, what: &str) -> Result<PlGerm> {
    match g {
        Germ::Pl(p) => Ok(p),
        _ => Err(GermError::Invalid(format!("{what} needs a PL germ"))),
    }
}

impl Env {
    /// `horizon` bounds the lazy constructions (minorants, anchor rules).
    pub fn new(defs: Vec<Definition>, horizon: u64) -> Env {
        Env { defs, horizon, done: HashMap::new() }
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.defs
    }

    /// Names in file order.
    pub fn names(&self) -> Vec<&str> {
        self.defs.iter().map(|d| d.name.as_str()).collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.iter().any(|d| d.name == name)
    }

    pub fn get(&mut self, name: &str) -> std::result::Result<Germ, DslError> {
        self.resolve(name, &mut Vec::new())
    }

    fn resolve(&mut self, name: &str, stack: &mut Vec<String>) -> std::result::Result<Germ, DslError> {
        if name == "zero" {
            return Ok(Germ::Zero);
        }
        if let Some(g) = self.done.get(name) {
            return Ok(g.clone());
        }
        let Some(def) = self.defs.iter().find(|d| d.name == name).cloned() else {
            return Err(DslError::Unknown(name.to_string()));
        };
        if stack.iter().any(|s| s == name) {
            return Err(DslError::Semantic {
                name: def.name.clone(),
                line: def.line,
                error: GermError::Invalid(format!("cyclic definition through {}", stack.join(" -> "))),
            });
        }
        stack.push(name.to_string());
        let g = self.eval(&def.expr, stack);
        stack.pop();
        let g = g.map_err(|e| match e {
            DslError::Germ(error) => DslError::Semantic { name: def.name.clone(), line: def.line, error },
            other => other,
        })?;
        self.done.insert(name.to_string(), g.clone());
        Ok(g)
    }

    /// Evaluates an expression against the file's definitions.
    pub fn eval_expr(&mut self, e: &GermExpr) -> std::result::Result<Germ, DslError> {
        self.eval(e, &mut Vec::new())
    }

    fn eval(&mut self, e: &GermExpr, stack: &mut Vec<String>) -> std::result::Result<Germ, DslError> {
        let h = self.horizon;
        macro_rules! sub {
            ($x:expr) => {
                self.eval($x, stack)?
            };
        }
        Ok(match e {
            GermExpr::Ref(n) => return self.resolve(n, stack),
            GermExpr::Pl { start, code } => Germ::Pl(PlGerm::new(start.unwrap_or(1), CodeGen::Closed(closed(code)?))),
            GermExpr::Rat { start, value, tier } => Germ::Rat(RatGerm::new(
                start.unwrap_or(1),
                Profile::Expr(value.clone()),
                tier.unwrap_or(Tier::PseudoMonotone),
            )),
            GermExpr::Table { start, head, tail } => {
                Germ::Pl(PlGerm::with_head(*start, head.clone(), CodeGen::Closed(closed(tail)?)))
            }
            GermExpr::Compose(a, b) => {
                let a = need_pl(sub!(a), "composition")?;
                let b = need_pl(sub!(b), "composition")?;
                Germ::Pl(compose(&a, &b)?)
            }
            GermExpr::Mul(a, b) | GermExpr::Add(a, b) | GermExpr::Div(a, b) => {
                let op = match e {
                    GermExpr::Mul(..) => ArithOp::Mul,
                    GermExpr::Add(..) => ArithOp::Add,
                    _ => ArithOp::Div,
                };
                let a = sub!(a);
                let b = sub!(b);
                arithmetic(&op, &a, Some(&b))?
            }
            GermExpr::Scale(q, a) => {
                let a = sub!(a);
                arithmetic(&ArithOp::Scale(q.clone()), &a, None)?
            }
            GermExpr::Inv(a) => Germ::Rat(invert(&need_pl(sub!(a), "inv")?)?),
            GermExpr::Switch(a) => Germ::Rat(switch(&need_pl(sub!(a), "switch")?)?),
            GermExpr::Diag(es) => {
                let mut members = Vec::with_capacity(es.len());
                for x in es {
                    members.push(need_pl(sub!(x), "diag")?);
                }
                Germ::Pl(diagonal_below(&Family::Finite(members))?)
            }
            GermExpr::Minor(a) => {
                let a = sub!(a);
                Germ::Pl(minorize_to_pl(&a, h)?.germ)
            }
            GermExpr::Pinch(dir, a, anchors) => {
                let a = sub!(a);
                let seq = match anchors {
                    Anchors::List(xs) => AnchorSeq::from_list(xs.clone())?,
                    Anchors::Rule(r) => AnchorSeq::from_rule(&closed(r)?, h)?,
                };
                Germ::Rat(pinch(*dir, &a, &seq)?)
            }
        })
    }
}
