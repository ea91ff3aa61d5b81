//! Worked extractions for the semigroups whose weight is too large for
//! ramification alone: ⟨3,8⟩, ⟨3,10,17⟩, ⟨4,6,13⟩ and the hyperelliptic
//! semigroups of genus 5 to 8.

use serde_json::{json, Value};
use thiserror::Error;

use super::{
    gap_condition_in, independence_certificate, section_template, ConditionContext, GapSeriesError,
    IndependenceCertificate, Polynomial, Symbol, SymbolicSeries,
};
use crate::numsgp::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("case {case}, step {step}: {source}")]
    Step {
        case: String,
        step: String,
        source: GapSeriesError,
    },
}

pub const CASE_IDS: [&str; 8] = ["3-8", "3-10-17", "4-6-13", "hyp5", "hyp6", "hyp7-n3", "hyp7", "hyp8"];

/// A coefficient shown for reference rather than imposed.
#[derive(Debug, Clone)]
pub struct DisplayedCoefficient {
    pub label: String,
    pub polynomial: Polynomial,
    pub expected: Option<Polynomial>,
}

#[derive(Debug, Clone)]
pub struct ExtractedCondition {
    pub label: String,
    pub rho: u32,
    pub polynomial: Polynomial,
    /// Symbol the condition is solved for; `None` when it is implied by the
    /// earlier ones.
    pub witness: Option<Symbol>,
    /// The witness written as `[t^k]f_j`.
    pub witness_coefficient: Option<String>,
    pub expected: Option<Polynomial>,
}

impl ExtractedCondition {
    pub fn matches_expected(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| e.eq_up_to_sign(&self.polynomial))
    }
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub id: String,
    pub semigroup: NumericalSemigroup,
    pub displays: Vec<DisplayedCoefficient>,
    pub conditions: Vec<ExtractedCondition>,
    pub certificate: IndependenceCertificate,
    pub notes: Vec<String>,
}

impl CaseReport {
    pub fn all_match(&self) -> bool {
        self.conditions.iter().all(ExtractedCondition::matches_expected)
            && self
                .displays
                .iter()
                .all(|d| d.expected.as_ref().is_none_or(|e| e.eq_up_to_sign(&d.polynomial)))
    }

    pub fn witness_coefficients(&self) -> Vec<String> {
        self.conditions.iter().filter_map(|c| c.witness_coefficient.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.id,
            "semigroup": self.semigroup.minimal_generators(),
            "displays": self.displays.iter().map(|d| json!({
                "label": d.label,
                "polynomial": d.polynomial.to_string(),
                "expected": d.expected.as_ref().map(ToString::to_string),
            })).collect::<Vec<_>>(),
            "conditions": self.conditions.iter().map(|c| json!({
                "label": c.label,
                "rho": c.rho,
                "polynomial": c.polynomial.to_string(),
                "witness": c.witness.as_ref().map(ToString::to_string),
                "on": c.witness_coefficient,
                "expected": c.expected.as_ref().map(ToString::to_string),
                "matches": c.matches_expected(),
            })).collect::<Vec<_>>(),
            "independent": self.certificate.independent,
            "jacobian_rank": self.certificate.rank,
            "notes": self.notes,
        })
    }
}

struct Builder {
    id: String,
    s: NumericalSemigroup,
    f: Vec<SymbolicSeries>,
    ctx: ConditionContext,
    displays: Vec<DisplayedCoefficient>,
    conditions: Vec<ExtractedCondition>,
    notes: Vec<String>,
}

fn parse(s: &str) -> Polynomial {
    Polynomial::parse(s).expect("fixture polynomials are well formed")
}

impl Builder {
    /// Sections `f_1..f_count`; section `j` gets `depth(j)` symbolic
    /// coefficients and is known to `order(j)`.
    fn new(
        id: &str,
        gens: &[u32],
        count: u32,
        depth: impl Fn(u32) -> u32,
        order: impl Fn(u32) -> u32,
    ) -> Self {
        let s = NumericalSemigroup::from_generators(gens).expect("fixture semigroups are valid");
        let f = (1..=count)
            .map(|j| section_template(&s, j, depth(j), order(j)).expect("orders exceed leads"))
            .collect();
        Self {
            id: id.to_string(),
            s,
            f,
            ctx: ConditionContext::new(),
            displays: Vec::new(),
            conditions: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn f(&self, j: usize) -> &SymbolicSeries {
        &self.f[j - 1]
    }

    fn err(&self, step: &str, source: GapSeriesError) -> CaseError {
        CaseError::Step {
            case: self.id.clone(),
            step: step.to_string(),
            source,
        }
    }

    fn coefficient(&self, label: &str, e: &SymbolicSeries, k: u32) -> Result<Polynomial, CaseError> {
        e.coefficient(k).map_err(|x| self.err(label, x.into()))
    }

    fn display(&mut self, label: &str, e: &SymbolicSeries, k: u32, expected: &str) -> Result<(), CaseError> {
        let polynomial = self.coefficient(label, e, k)?;
        self.displays.push(DisplayedCoefficient {
            label: label.to_string(),
            polynomial,
            expected: Some(parse(expected)),
        });
        Ok(())
    }

    fn eliminate(&self, label: &str, e: &SymbolicSeries, k: u32, by: &SymbolicSeries) -> Result<SymbolicSeries, CaseError> {
        e.eliminate(k, by).map_err(|x| self.err(label, x.into()))
    }

    /// Extract the condition at gap `rho` and solve it for `witness`. A
    /// condition that is already implied is recorded without a witness.
    fn impose(
        &mut self,
        label: &str,
        e: &SymbolicSeries,
        rho: u32,
        witness: Symbol,
        expected: Option<&str>,
    ) -> Result<Polynomial, CaseError> {
        let polynomial = gap_condition_in(&self.s, e, rho, &self.ctx).map_err(|x| self.err(label, x))?;
        let implied = self.ctx.reduce(&polynomial).is_zero();
        let witness = if implied {
            None
        } else {
            self.ctx.impose(&polynomial, &witness).map_err(|x| self.err(label, x))?;
            Some(witness)
        };
        let witness_coefficient = witness.as_ref().map(|w| match w {
            Symbol::Coef { offset, branch } => {
                format!("[t^{}]f{}", self.s.nth_element(*branch) + offset, branch)
            }
            Symbol::Var(v) => v.clone(),
        });
        self.conditions.push(ExtractedCondition {
            label: label.to_string(),
            rho,
            polynomial: polynomial.clone(),
            witness,
            witness_coefficient,
            expected: expected.map(parse),
        });
        Ok(polynomial)
    }

    fn finish(self, seed: u64) -> CaseReport {
        let (conds, witnesses): (Vec<Polynomial>, Vec<Symbol>) = self
            .conditions
            .iter()
            .filter_map(|c| c.witness.clone().map(|w| (c.polynomial.clone(), w)))
            .unzip();
        let certificate = independence_certificate(&conds, &witnesses, seed);
        CaseReport {
            id: self.id,
            semigroup: self.s,
            displays: self.displays,
            conditions: self.conditions,
            certificate,
            notes: self.notes,
        }
    }
}

fn a(j: u32) -> Symbol {
    Symbol::alpha(j)
}

fn three_eight(id: &str, gens: &[u32]) -> Result<Builder, CaseError> {
    let mut b = Builder::new(id, gens, 2, |_| 1, |j| 3 * j + 2);
    let e = b.f(1).mul(b.f(1)).sub(b.f(2));
    b.impose("f1^2 - f2", &e, 7, a(2), Some("2*a1 - a2"))?;
    Ok(b)
}

fn four_six_thirteen() -> Result<Builder, CaseError> {
    let mut b = Builder::new("4-6-13", &[4, 6, 13], 4, |_| 1, |j| [6, 8, 10, 12][j as usize - 1]);
    let (f1, f2, f3, f4) = (b.f(1).clone(), b.f(2).clone(), b.f(3).clone(), b.f(4).clone());
    let sq = f1.mul(&f1);
    b.impose("f1^2 - f3", &sq.sub(&f3), 9, a(3), Some("2*a1 - a3"))?;
    let e = sq.mul(&f2).sub(&f2.mul(&f3));
    b.impose("f1^2*f2 - f2*f3", &e, 15, a(2), Some("2*a1 - a2 - a3"))?;
    b.notes.push(
        "f1^2*f2 - f2*f3 factors as f2*(f1^2 - f3), so its t^15 coefficient repeats 2*a1 - a3; \
         f1*f2 - f4 supplies an independent condition at t^11"
            .to_string(),
    );
    b.impose("f1*f2 - f4", &f1.mul(&f2).sub(&f4), 11, a(4), None)?;
    Ok(b)
}

/// Hyperelliptic sections of depth 1: `f_j = t^{2j} + α_j t^{2j+1} + O(t^{2j+2})`.
fn hyp_linear(id: &str, g: u32, count: u32) -> Builder {
    Builder::new(id, &[2, 2 * g + 1], count, |_| 1, |j| 2 * j + 2)
}

fn hyp5() -> Result<Builder, CaseError> {
    let mut b = hyp_linear("hyp5", 5, 2);
    let e = b.f(1).mul(b.f(1)).sub(b.f(2));
    b.impose("f1^2 - f2", &e, 5, a(2), Some("2*a1 - a2"))?;
    Ok(b)
}

fn hyp6() -> Result<Builder, CaseError> {
    let mut b = hyp_linear("hyp6", 6, 5);
    let f: Vec<SymbolicSeries> = b.f.clone();
    b.impose("f1^2 - f2", &f[0].mul(&f[0]).sub(&f[1]), 5, a(2), Some("2*a1 - a2"))?;
    b.impose("f1*f3 - f4", &f[0].mul(&f[2]).sub(&f[3]), 9, a(4), Some("a1 + a3 - a4"))?;
    b.impose("f2^2 - f4", &f[1].mul(&f[1]).sub(&f[3]), 9, a(3), Some("2*a2 - a4"))?;
    b.impose("f1*f4 - f5", &f[0].mul(&f[3]).sub(&f[4]), 11, a(5), Some("a1 + a4 - a5"))?;
    Ok(b)
}

fn hyp7_n3() -> Result<Builder, CaseError> {
    let mut b = hyp_linear("hyp7-n3", 7, 3);
    let f: Vec<SymbolicSeries> = b.f.clone();
    b.impose("f1^2 - f2", &f[0].mul(&f[0]).sub(&f[1]), 5, a(2), Some("2*a1 - a2"))?;
    b.impose("f2^2 - f1*f3", &f[1].mul(&f[1]).sub(&f[0].mul(&f[2])), 9, a(3), Some("2*a2 - a1 - a3"))?;
    Ok(b)
}

/// `F_k = f_1 f_k − f_{k+1}`.
fn big_f(f: &[SymbolicSeries], k: usize) -> SymbolicSeries {
    f[0].mul(&f[k - 1]).sub(&f[k])
}

fn hyp7() -> Result<Builder, CaseError> {
    let mut b = Builder::new("hyp7", &[2, 15], 6, |_| 3, |j| 2 * j + 4);
    let f: Vec<SymbolicSeries> = b.f.clone();
    let fk: Vec<SymbolicSeries> = (1..=5).map(|k| big_f(&f, k)).collect();
    let linear = ["2*a1 - a2", "a1 + a2 - a3", "a1 + a3 - a4", "a1 + a4 - a5", "a1 + a5 - a6"];
    for k in 1..=5usize {
        let label = format!("[t^{}]F{k}", 2 * k + 3);
        b.impose(&label, &fk[k - 1], 2 * k as u32 + 3, a(k as u32 + 1), Some(linear[k - 1]))?;
    }
    b.display("[t^6]F1", &fk[0], 6, "2*b1 + a1^2 - b2")?;
    b.display("[t^7]F1", &fk[0], 7, "2*g1 + 2*a1*b1 - g2")?;
    b.display("[t^8]F2", &fk[1], 8, "b1 + b2 + a1*a2 - b3")?;
    b.display("[t^9]F2", &fk[1], 9, "g1 + g2 + a1*b2 + a2*b1 - g3")?;
    b.display("[t^10]F3", &fk[2], 10, "b1 + b3 + a1*a3 - b4")?;
    b.display("[t^11]F3", &fk[2], 11, "g1 + g3 + a1*b3 + a3*b1 - g4")?;
    let q1 = b.eliminate("F1 - ([t^6]F1)f3", &fk[0], 6, &f[2])?;
    b.impose(
        "[t^7](F1 - ([t^6]F1)f3)",
        &q1,
        7,
        Symbol::gamma(2),
        Some("2*g1 + 2*a1*b1 - g2 - a3*(2*b1 + a1^2 - b2)"),
    )?;
    let q2 = b.eliminate("F2 - ([t^8]F2)f4", &fk[1], 8, &f[3])?;
    b.impose(
        "[t^9](F2 - ([t^8]F2)f4)",
        &q2,
        9,
        Symbol::gamma(3),
        Some("g1 + g2 + a1*b2 + a2*b1 - g3 - a4*(b1 + b2 + a1*a2 - b3)"),
    )?;
    let q3 = b.eliminate("F3 - ([t^10]F3)f5", &fk[2], 10, &f[4])?;
    b.impose("[t^11](F3 - ([t^10]F3)f5)", &q3, 11, Symbol::gamma(4), None)?;
    Ok(b)
}

fn hyp8() -> Result<Builder, CaseError> {
    // Every section is carried to t^15, the last exponent the chain inspects.
    let mut b = Builder::new("hyp8", &[2, 17], 6, |j| 15 - 2 * j, |_| 16);
    let f: Vec<SymbolicSeries> = b.f.clone();
    let f1_f = |k: usize| f[0].mul(&f[k - 1]);
    let fk: Vec<SymbolicSeries> = (1..=5).map(|k| big_f(&f, k)).collect();
    for k in 1..=5usize {
        let label = format!("[t^{}](f1*f{k} - f{})", 2 * k + 3, k + 1);
        b.impose(&label, &fk[k - 1], 2 * k as u32 + 3, a(k as u32 + 1), None)?;
    }
    let c = Symbol::coef;

    let q1 = b.eliminate("Q1", &fk[0], 6, &f[2])?;
    b.impose("[t^7]Q1", &q1, 7, c(3, 2), None)?;
    let q2 = b.eliminate("Q2", &fk[1], 8, &f[3])?;
    b.impose("[t^9]Q2", &q2, 9, c(3, 3), None)?;
    let q1t = b.eliminate("Q~1", &q1, 8, &f[3])?;
    b.impose("[t^9]Q~1", &q1t, 9, c(5, 2), None)?;
    let q2t = b.eliminate("Q~2", &q2, 10, &f1_f(4))?;
    b.impose("[t^11]Q~2", &q2t, 11, c(5, 3), None)?;

    // F3 still carries a t^10 term, so it is cleared with f5 first; the
    // t^11 coefficient that surfaces is one more condition, on [t^11]f4.
    let literal = b.eliminate("Q3 (literal)", &fk[2], 12, &f1_f(5))?;
    if let Err(e) = gap_condition_in(&b.s, &literal, 13, &b.ctx) {
        b.notes.push(format!("F3 - ([t^12]F3)f1*f5 cannot be used directly: {e}"));
    }
    let p3 = b.eliminate("P3", &fk[2], 10, &f[4])?;
    b.impose("[t^11](F3 - ([t^10]F3)f5)", &p3, 11, c(3, 4), None)?;
    let q3 = b.eliminate("Q3", &p3, 12, &f1_f(5))?;
    b.impose("[t^13]Q3", &q3, 13, c(5, 4), None)?;
    let q3t = b.eliminate("Q~3", &q3, 14, &f[2].mul(&f[3]))?;
    b.impose("[t^15]Q~3", &q3t, 15, c(7, 4), None)?;

    let f4 = f1_f(5).sub(&f[5]);
    let q4 = b.eliminate("Q4", &f4, 14, &f1_f(6))?;
    b.impose("[t^15]Q4", &q4, 15, c(3, 6), None)?;
    Ok(b)
}

pub fn run_case(id: &str, seed: u64) -> Result<CaseReport, CaseError> {
    let b = match id {
        "3-8" => three_eight(id, &[3, 8])?,
        "3-10-17" => three_eight(id, &[3, 10, 17])?,
        "4-6-13" => four_six_thirteen()?,
        "hyp5" => hyp5()?,
        "hyp6" => hyp6()?,
        "hyp7-n3" => hyp7_n3()?,
        "hyp7" => hyp7()?,
        "hyp8" => hyp8()?,
        other => return Err(CaseError::UnknownCase(other.to_string())),
    };
    Ok(b.finish(seed))
}
