//! Hopf-algebra and comodule axiom checks, exposed for the self-test and the
//! acceptance suite.

use serde::Serialize;

use crate::backend::{Backend, BackendKind, Letter, Side};
use crate::coideal::{CoidealWord, EdgeElem, Step};
use crate::elem::AlgElem;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub backend: BackendKind,
    pub label: String,
    pub holds: bool,
}

fn check<B: Backend>(label: impl Into<String>, holds: bool) -> AxiomCheck {
    AxiomCheck { backend: B::KIND, label: label.into(), holds }
}

/// Coassociativity, counit laws, multiplicativity of the coproduct on the
/// defining relations, and centrality of the Casimir.
pub fn hopf_suite<B: Backend>() -> Result<Vec<AxiomCheck>> {
    let gens = B::generators();
    let mut samples: Vec<(String, AlgElem<B::Mono>)> =
        gens.iter().map(|(n, g)| (n.to_string(), g.clone())).collect();
    samples.push(("casimir".into(), B::casimir()));
    for (n1, g1) in &gens {
        for (n2, g2) in &gens {
            samples.push((format!("{n1}·{n2}"), g1.mul(g2)?));
        }
    }
    let mut out = Vec::new();
    for (name, x) in &samples {
        let d = x.coproduct(1)?;
        out.push(check::<B>(format!("coassociativity {name}"), d.coproduct(1)? == d.coproduct(2)?));
        out.push(check::<B>(format!("left counit {name}"), d.counit(1)? == *x));
        out.push(check::<B>(format!("right counit {name}"), d.counit(2)? == *x));
    }
    let plain: Vec<_> = gens.iter().map(|(_, g)| g.clone()).collect();
    for (name, r) in B::relation_residuals(&plain)? {
        out.push(check::<B>(format!("relation {name}"), r.is_zero()));
    }
    let images: Vec<_> = plain.iter().map(|g| g.coproduct(1)).collect::<Result<_>>()?;
    for (name, r) in B::relation_residuals(&images)? {
        out.push(check::<B>(format!("coproduct preserves {name}"), r.is_zero()));
    }
    let c = B::casimir();
    for (name, g) in &gens {
        out.push(check::<B>(format!("casimir commutes with {name}"), AlgElem::comm(&c, g)?.is_zero()));
    }
    Ok(out)
}

fn letters_on<B: Backend>(side: Side) -> Vec<Letter> {
    let t = B::tables();
    (0..t.letters.len() as Letter)
        .filter(|l| {
            let s = t.letters[*l as usize].side;
            if side == Side::Left {
                s.in_left()
            } else {
                s.in_right()
            }
        })
        .collect()
}

/// Comodule axioms of both coactions on all coideal words of length ≤ 2,
/// plus agreement of tabulated word coproducts with the algebra coproduct.
pub fn comodule_suite<B: Backend>() -> Result<Vec<AxiomCheck>> {
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let letters = letters_on::<B>(side);
        let mut words: Vec<Vec<Letter>> = letters.iter().map(|&l| vec![l]).collect();
        for &a in &letters {
            for &b in &letters {
                words.push(vec![a, b]);
            }
        }
        for w in words {
            let cw = CoidealWord::<B>::word(side, &w)?;
            let name = crate::backend::word_name::<B>(&w);
            let x = cw.expand();
            let t = cw.coaction()?;
            let (coassoc, counit) = if side == Side::Left {
                (
                    t.apply(Step::tau_l(1))?.finalize() == t.apply(Step::delta(2))?.finalize(),
                    t.counit(2)?.finalize() == x,
                )
            } else {
                (
                    t.apply(Step::tau_r(2))?.finalize() == t.apply(Step::delta(1))?.finalize(),
                    t.counit(1)?.finalize() == x,
                )
            };
            let tag = if side == Side::Left { "τ_L" } else { "τ_R" };
            out.push(check::<B>(format!("{tag} coassociativity {name}"), coassoc));
            out.push(check::<B>(format!("{tag} counit {name}"), counit));
            out.push(check::<B>(format!("word coproduct {name}"), cw.coproduct()?.finalize() == x.coproduct(1)?));
        }
    }
    Ok(out)
}

/// `(1⊗τ_R)Δ(C) = (τ_L⊗1)Δ(C)` for the Casimir `C`.
pub fn cotensor_check<B: Backend>() -> Result<AxiomCheck> {
    let x = EdgeElem::<B>::casimir().apply(Step::delta(1))?;
    let a = x.apply(Step::tau_r(2))?.finalize();
    let b = x.apply(Step::tau_l(1))?.finalize();
    Ok(check::<B>("cotensor", a == b))
}
