//! Self-duality of rank-4 rotation groups and polarities of regular C-groups,
//! and the extended groups obtained by adjoining the duality.
//!
//! Detection tests the normalized duality actions only: a proper duality
//! acting as `σ1 ↦ σ3⁻¹, σ2 ↦ σ2⁻¹, σ3 ↦ σ1⁻¹`, and an improper one acting as
//! `σ1 ↦ σ3⁻¹, σ2 ↦ σ1σ2σ1⁻¹, σ3 ↦ σ1` whose square is conjugation by
//! `σ1σ2σ3`. Extended groups are re-enumerated from an augmented presentation
//! and then cross-checked.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{enumerate, EngineError, GroupRep};
use crate::presentation::{product, Presentation, Word};
use crate::rotary::{is_automorphism, Chirality, RegularCGroup4, RotaryError, RotationGroup4};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfDualError {
    #[error("input is not {0} self-dual")]
    NotSelfDual(SelfDualityKind),
    #[error("chiral input admits both a proper and an improper duality")]
    BothDualities,
    #[error("distinguished words generate {generated} of {total} elements; the extension needs the whole group")]
    NotGenerating { generated: usize, total: usize },
    #[error("extended group has order {got}, expected {expected}: duality inconsistent")]
    Collapse { expected: usize, got: usize },
    #[error("identity {0} fails in the extended group")]
    Identity(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rotary(#[from] RotaryError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfDualityKind {
    None,
    Proper,
    Improper,
    RegularPolarity,
}

impl SelfDualityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SelfDualityKind::None => "none",
            SelfDualityKind::Proper => "proper",
            SelfDualityKind::Improper => "improper",
            SelfDualityKind::RegularPolarity => "regular-polarity",
        }
    }
}

impl std::fmt::Display for SelfDualityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a self-duality test.
///
/// `witness` lists the images of the distinguished generators, written over
/// the distinguished generators themselves (generator `i` stands for `σ(i+1)`
/// or `ρi`); it is empty for [`SelfDualityKind::None`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelfDuality {
    pub kind: SelfDualityKind,
    pub witness: Vec<Word>,
    pub note: Option<String>,
}

impl SelfDuality {
    fn none(note: Option<String>) -> Self {
        SelfDuality {
            kind: SelfDualityKind::None,
            witness: Vec::new(),
            note,
        }
    }
}

/// `σ1 ↦ σ3⁻¹, σ2 ↦ σ2⁻¹, σ3 ↦ σ1⁻¹`.
pub fn proper_action() -> [Word; 3] {
    [
        Word::from_signed(&[-3]),
        Word::from_signed(&[-2]),
        Word::from_signed(&[-1]),
    ]
}

/// `σ1 ↦ σ3⁻¹, σ2 ↦ σ1σ2σ1⁻¹, σ3 ↦ σ1`.
pub fn improper_action() -> [Word; 3] {
    [
        Word::from_signed(&[-3]),
        Word::from_signed(&[1, 2, -1]),
        Word::from_signed(&[1]),
    ]
}

/// `ρi ↦ ρ(3-i)`.
pub fn polarity_action() -> [Word; 4] {
    [3, 2, 1, 0].map(Word::generator)
}

fn evaluate(abstract_words: &[Word], sigma: &[Word]) -> Vec<Word> {
    abstract_words
        .iter()
        .map(|w| {
            w.substitute(sigma)
                .expect("one word per distinguished generator")
        })
        .collect()
}

/// Whether the square of the improper action is conjugation by `σ1σ2σ3`,
/// compared on generators.
fn improper_square_is_inner(rep: &GroupRep, sigma: &[Word; 3]) -> bool {
    let action = improper_action();
    let squared = evaluate(&evaluate(&action, &action), sigma);
    let c = product(sigma.iter());
    sigma
        .iter()
        .zip(&squared)
        .all(|(s, img)| rep.equal(img, &product([&c.inverse(), s, &c])))
}

/// Classifies a rank-4 rotation group by the normalized duality actions.
///
/// A regular input may pass both tests; `Proper` is then reported. On a
/// chiral input both passing is an inconsistency and is reported as an error.
pub fn detect_self_duality(m: &RotationGroup4) -> Result<SelfDuality, SelfDualError> {
    let [p, _, r] = m.schlafli();
    if p != r {
        return Ok(SelfDuality::none(None));
    }
    let sigma = m.sigma();
    let rep = m.rep();
    let proper = is_automorphism(rep, sigma, &evaluate(&proper_action(), sigma));
    let improper_auto = is_automorphism(rep, sigma, &evaluate(&improper_action(), sigma));
    let improper = improper_auto && improper_square_is_inner(rep, sigma);
    if proper && improper && m.classify() == Chirality::Chiral {
        return Err(SelfDualError::BothDualities);
    }
    Ok(if proper {
        SelfDuality {
            kind: SelfDualityKind::Proper,
            witness: proper_action().to_vec(),
            note: None,
        }
    } else if improper {
        SelfDuality {
            kind: SelfDualityKind::Improper,
            witness: improper_action().to_vec(),
            note: None,
        }
    } else if improper_auto {
        SelfDuality::none(Some(
            "improper action extends but its square is not conjugation by σ1σ2σ3; \
             other normalizations are not tried"
                .to_string(),
        ))
    } else {
        SelfDuality::none(None)
    })
}

/// Group of automorphisms and dualities, as an enumerated presentation over
/// the base generators plus one duality generator.
#[derive(Clone, Debug)]
pub struct ExtendedGroup {
    rep: Arc<GroupRep>,
    kind: SelfDualityKind,
    distinguished: Vec<Word>,
    duality: Word,
    base_order: usize,
    base_type: Vec<usize>,
    base_chirality: Chirality,
}

impl ExtendedGroup {
    pub fn rep(&self) -> &Arc<GroupRep> {
        &self.rep
    }

    pub fn kind(&self) -> SelfDualityKind {
        self.kind
    }

    /// The σ-words (rotation input) or ρ-words (C-group input), unchanged from
    /// the base group since the base generators keep their indices.
    pub fn distinguished(&self) -> &[Word] {
        &self.distinguished
    }

    /// The adjoined duality `d`.
    pub fn duality(&self) -> &Word {
        &self.duality
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    /// Schläfli type of the base group.
    pub fn base_type(&self) -> &[usize] {
        &self.base_type
    }

    pub fn base_chirality(&self) -> Chirality {
        self.base_chirality
    }

    pub fn order(&self) -> usize {
        self.rep.order()
    }

    /// `d⁻¹ w d`.
    pub fn conjugate(&self, w: &Word) -> Word {
        product([&self.duality.inverse(), w, &self.duality])
    }
}

fn fresh_name(p: &Presentation) -> String {
    std::iter::once("d".to_string())
        .chain((1..).map(|i| format!("d{i}")))
        .find(|n| p.generator_index(n).is_none())
        .expect("unbounded supply of names")
}

struct Base<'a> {
    rep: &'a GroupRep,
    distinguished: &'a [Word],
    schlafli: Vec<usize>,
    chirality: Chirality,
}

/// Enumerates the base presentation plus a generator `d` and the relators
/// produced by `extra(d)`, requiring the order to double.
fn extend(
    base: Base<'_>,
    kind: SelfDualityKind,
    cap: usize,
    extra: impl Fn(&Word) -> Vec<Word>,
) -> Result<ExtendedGroup, SelfDualError> {
    let Base {
        rep: base,
        distinguished,
        schlafli,
        chirality,
    } = base;
    let generated = base.subgroup_closure(distinguished).order();
    if generated != base.order() {
        return Err(SelfDualError::NotGenerating {
            generated,
            total: base.order(),
        });
    }
    let p = base.presentation();
    let mut names: Vec<String> = p.generator_names().iter().map(|s| s.to_string()).collect();
    let d = Word::generator(names.len());
    names.push(fresh_name(p));
    let mut relators = p.relators().to_vec();
    relators.extend(extra(&d));
    let augmented =
        Presentation::new(&names, relators, None).expect("augmented presentation is well formed");
    let rep = Arc::new(enumerate(&augmented, cap)?);
    if rep.order() != 2 * base.order() {
        return Err(SelfDualError::Collapse {
            expected: 2 * base.order(),
            got: rep.order(),
        });
    }
    let ext = ExtendedGroup {
        rep,
        kind,
        distinguished: distinguished.to_vec(),
        duality: d,
        base_order: base.order(),
        base_type: schlafli,
        base_chirality: chirality,
    };
    let embedded = ext.rep.subgroup_closure(distinguished).order();
    if embedded * 2 != ext.order() {
        return Err(SelfDualError::Identity(
            "base generators span an index-2 subgroup".into(),
        ));
    }
    Ok(ext)
}

fn check(rep: &GroupRep, lhs: &Word, rhs: &Word, name: &str) -> Result<(), SelfDualError> {
    if rep.equal(lhs, rhs) {
        Ok(())
    } else {
        Err(SelfDualError::Identity(name.to_string()))
    }
}

/// Adjoins the improper duality `δ` with `δ² = σ1σ2σ3`.
pub fn extend_improper(m: &RotationGroup4, cap: usize) -> Result<ExtendedGroup, SelfDualError> {
    let sigma = m.sigma();
    let rep = m.rep();
    if !(is_automorphism(rep, sigma, &evaluate(&improper_action(), sigma))
        && improper_square_is_inner(rep, sigma))
    {
        return Err(SelfDualError::NotSelfDual(SelfDualityKind::Improper));
    }
    let [s1, s2, s3] = sigma;
    let s123 = product([s1, s2, s3]);
    let base = Base {
        rep,
        distinguished: sigma,
        schlafli: m.schlafli().to_vec(),
        chirality: m.classify(),
    };
    let ext = extend(base, SelfDualityKind::Improper, cap, |d| {
        let di = d.inverse();
        vec![
            product([&di, s1, d, s3]),
            product([&di, s2, d, s1, &s2.inverse(), &s1.inverse()]),
            product([&di, s3, d, &s1.inverse()]),
            product([d, d, &s123.inverse()]),
        ]
    })?;
    let g = ext.rep().as_ref();
    let d = ext.duality();
    check(g, &d.pow(2), &s123, "δ² = σ1σ2σ3")?;
    check(g, &d.pow(4), &Word::identity(), "δ⁴ = ε")?;
    check(g, &ext.conjugate(&s123), &s123, "δ fixes σ1σ2σ3")?;
    // conjugation by δ cycles σ1σ2 → σ1σ2σ3σ1⁻¹ → σ3⁻¹σ1σ2σ3 → σ2σ3 → σ1σ2
    let cycle = [
        s1 * s2,
        product([s1, s2, s3, &s1.inverse()]),
        product([&s3.inverse(), s1, s2, s3]),
        s2 * s3,
    ];
    for i in 0..4 {
        check(
            g,
            &ext.conjugate(&cycle[i]),
            &cycle[(i + 1) % 4],
            "conjugation by δ cycles the four involutions",
        )?;
    }
    Ok(ext)
}

/// Adjoins the polarity `ω` with `ωσ1ω = σ3⁻¹`, `ωσ2ω = σ2⁻¹`.
pub fn extend_proper(m: &RotationGroup4, cap: usize) -> Result<ExtendedGroup, SelfDualError> {
    let sigma = m.sigma();
    let rep = m.rep();
    if !is_automorphism(rep, sigma, &evaluate(&proper_action(), sigma)) {
        return Err(SelfDualError::NotSelfDual(SelfDualityKind::Proper));
    }
    let [s1, s2, s3] = sigma;
    let base = Base {
        rep,
        distinguished: sigma,
        schlafli: m.schlafli().to_vec(),
        chirality: m.classify(),
    };
    let ext = extend(base, SelfDualityKind::Proper, cap, |d| {
        vec![
            d * d,
            product([d, s1, d, s3]),
            product([d, s2, d, s2]),
            product([d, s3, d, s1]),
        ]
    })?;
    let g = ext.rep().as_ref();
    let s123 = product([s1, s2, s3]);
    check(g, &ext.conjugate(&(s1 * s2)), &(s2 * s3), "ωσ1σ2ω = σ2σ3")?;
    check(g, &ext.conjugate(&(s2 * s3)), &(s1 * s2), "ωσ2σ3ω = σ1σ2")?;
    check(g, &ext.conjugate(&s123), &s123, "ω fixes σ1σ2σ3")?;
    Ok(ext)
}

/// Tests whether `ρi ↦ ρ(3-i)` extends to an automorphism.
pub fn find_polarity(c: &RegularCGroup4) -> SelfDuality {
    let rho = c.rho();
    let images = evaluate(&polarity_action(), rho);
    if is_automorphism(c.rep(), rho, &images) {
        SelfDuality {
            kind: SelfDualityKind::RegularPolarity,
            witness: polarity_action().to_vec(),
            note: None,
        }
    } else {
        SelfDuality::none(None)
    }
}

/// Adjoins the polarity `ω` fixing the base flag: `ω² = ε`, `ωρiω = ρ(3-i)`.
pub fn extend_polarity(c: &RegularCGroup4, cap: usize) -> Result<ExtendedGroup, SelfDualError> {
    if find_polarity(c).kind != SelfDualityKind::RegularPolarity {
        return Err(SelfDualError::NotSelfDual(SelfDualityKind::RegularPolarity));
    }
    let rho = c.rho().clone();
    let base = Base {
        rep: c.rep(),
        distinguished: &rho,
        schlafli: c.schlafli().to_vec(),
        chirality: Chirality::Regular,
    };
    let ext = extend(base, SelfDualityKind::RegularPolarity, cap, |d| {
        let mut rels = vec![d * d];
        rels.extend((0..4).map(|i| product([d, &rho[i], d, &rho[3 - i]])));
        rels
    })?;
    // δ := ωρ0 acts as ρ0 ↦ ρ3, ρ1 ↦ ρ2, ρ2 ↦ ρ0ρ1ρ0, ρ3 ↦ ρ0
    let g = ext.rep().as_ref();
    let delta = ext.duality() * &rho[0];
    let conj = |w: &Word| product([&delta.inverse(), w, &delta]);
    check(g, &conj(&rho[0]), &rho[3], "δ⁻¹ρ0δ = ρ3")?;
    check(g, &conj(&rho[1]), &rho[2], "δ⁻¹ρ1δ = ρ2")?;
    check(
        g,
        &conj(&rho[2]),
        &product([&rho[0], &rho[1], &rho[0]]),
        "δ⁻¹ρ2δ = ρ0ρ1ρ0",
    )?;
    check(g, &conj(&rho[3]), &rho[0], "δ⁻¹ρ3δ = ρ0")?;
    check(g, &delta, &(&rho[3] * ext.duality()), "ωρ0 = ρ3ω")?;
    Ok(ext)
}
