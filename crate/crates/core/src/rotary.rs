//! Rotation groups of rank 3 and 4, regular C-groups, and the map invariants
//! computed from them.
//!
//! Every wrapper holds a shared [`GroupRep`] plus its distinguished generators
//! as words in the rep's alphabet. The distinguished words need not generate
//! the whole rep: the rotation subgroup of a regular map lives inside the
//! full group, and every count below is taken relative to the subgroup the
//! distinguished words generate.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{enumerate, EngineError, GroupRep, Subgroup};
use crate::presentation::{product, DistinguishedKind, Letter, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RotaryError {
    #[error("relation {0} does not hold")]
    Relation(String),
    #[error("generators fail the intersection condition")]
    NotPolytopal,
    #[error("hole index {j} out of range 1..={max}")]
    HoleOutOfRange { j: usize, max: usize },
    #[error("Euler characteristic {0} is odd for an orientable map")]
    OddEuler(i64),
    #[error("presentation has no {0} line")]
    MissingDistinguished(&'static str),
    #[error("expected {expected} distinguished words, found {found}")]
    WrongRank { expected: usize, found: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chirality {
    Chiral,
    Regular,
    NotPolytopal,
}

impl Chirality {
    pub fn as_str(self) -> &'static str {
        match self {
            Chirality::Chiral => "chiral",
            Chirality::Regular => "regular",
            Chirality::NotPolytopal => "not-polytopal",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FVector {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl FVector {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.vertices, self.edges, self.faces]
    }
}

/// Invariants of a map (rank-3 polytope or rotary map).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MapInvariants {
    pub schlafli: [usize; 2],
    pub f_vector: FVector,
    pub euler: i64,
    /// `None` when orientability is not established.
    pub genus: Option<u64>,
    /// j-hole lengths for `2 ≤ j ≤ ⌊q/2⌋`.
    pub holes: BTreeMap<usize, usize>,
    /// j-zigzag lengths for `1 ≤ j ≤ ⌊q/2⌋`; regular maps only.
    pub zigzags: Option<BTreeMap<usize, usize>>,
    pub chirality: Chirality,
}

/// Normal closure of the edge half-turn and the involution diagnostics.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub n_tau_order: usize,
    pub n_tau_index: usize,
    pub group_gen_by_involutions: bool,
    /// Generation by involutions forces index at most 2; `false` flags a bug.
    pub prop62_consistent: bool,
}

/// Automorphism test for `domain[i] ↦ images[i]` on `⟨domain⟩`.
///
/// When the domain is exactly the generator list of the presentation the
/// relator-substitution test is used; otherwise the element-wise graph test.
pub fn is_automorphism(rep: &GroupRep, domain: &[Word], images: &[Word]) -> bool {
    let bare = domain.len() == rep.presentation().generator_count()
        && domain
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i));
    if bare {
        rep.extends_to_automorphism(images).unwrap_or(false)
    } else {
        rep.extends_to_isomorphism_on(domain, images)
    }
}

fn require_identity(rep: &GroupRep, w: &Word, what: &str) -> Result<(), RotaryError> {
    if rep.is_identity(w) {
        Ok(())
    } else {
        Err(RotaryError::Relation(what.to_string()))
    }
}

fn distinguished_words(
    p: &Presentation,
    kind: DistinguishedKind,
    rank_words: usize,
) -> Result<Vec<Word>, RotaryError> {
    match p.distinguished() {
        Some(d) if d.kind == kind => {
            if d.words.len() == rank_words {
                Ok(d.words.clone())
            } else {
                Err(RotaryError::WrongRank {
                    expected: rank_words,
                    found: d.words.len(),
                })
            }
        }
        _ if p.generator_count() == rank_words => {
            Ok((0..rank_words).map(Word::generator).collect())
        }
        _ => Err(RotaryError::MissingDistinguished(kind.keyword())),
    }
}

/// Rotation group of a rank-3 chiral or regular polytope, or of a rotary map.
#[derive(Clone, Debug)]
pub struct RotationGroup3 {
    rep: Arc<GroupRep>,
    sigma: [Word; 2],
    order: usize,
    type_pq: [usize; 2],
}

impl RotationGroup3 {
    pub fn new(rep: Arc<GroupRep>, sigma1: Word, sigma2: Word) -> Result<Self, RotaryError> {
        require_identity(&rep, &(&sigma1 * &sigma2).pow(2), "(σ1σ2)^2 = ε")?;
        let order = rep
            .subgroup_closure(&[sigma1.clone(), sigma2.clone()])
            .order();
        let type_pq = [rep.element_order(&sigma1), rep.element_order(&sigma2)];
        Ok(RotationGroup3 {
            rep,
            sigma: [sigma1.reduced(), sigma2.reduced()],
            order,
            type_pq,
        })
    }

    /// Enumerates a presentation whose `sigma` line has two words (or which
    /// has exactly two generators).
    pub fn from_presentation(p: &Presentation, cap: usize) -> Result<Self, RotaryError> {
        let words = distinguished_words(p, DistinguishedKind::Sigma, 2)?;
        let rep = Arc::new(enumerate(p, cap)?);
        let [s1, s2]: [Word; 2] = words.try_into().expect("two words");
        Self::new(rep, s1, s2)
    }

    pub fn rep(&self) -> &Arc<GroupRep> {
        &self.rep
    }

    pub fn sigma(&self) -> &[Word; 2] {
        &self.sigma
    }

    /// Order of the rotation group `⟨σ1, σ2⟩`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn schlafli(&self) -> [usize; 2] {
        self.type_pq
    }

    pub fn closure(&self) -> Subgroup {
        self.rep.subgroup_closure(&self.sigma)
    }

    /// `⟨σ1⟩ ∩ ⟨σ2⟩ = {ε}`, with both rotations non-trivial.
    pub fn check_polytopal(&self) -> bool {
        if self.type_pq.iter().any(|&k| k < 2) {
            return false;
        }
        let a = self.rep.subgroup_closure(&self.sigma[..1]);
        let b = self.rep.subgroup_closure(&self.sigma[1..]);
        a.intersection_order(&b) == 1
    }

    /// Whether `σ1 ↦ σ1⁻¹, σ2 ↦ σ1²σ2` extends to an automorphism, i.e. the
    /// map admits a reflection. Meaningful for any rotary map.
    pub fn is_reflexible(&self) -> bool {
        let [s1, s2] = &self.sigma;
        let images = [s1.inverse(), product([s1, s1, s2])];
        is_automorphism(&self.rep, &self.sigma, &images)
    }

    pub fn classify(&self) -> Chirality {
        if !self.check_polytopal() {
            Chirality::NotPolytopal
        } else if self.is_reflexible() {
            Chirality::Regular
        } else {
            Chirality::Chiral
        }
    }

    /// Coset counts `|Γ|/|⟨σ2⟩|, |Γ|/2, |Γ|/|⟨σ1⟩|`, computed even when
    /// the intersection condition fails.
    pub fn f_vector_diagnostic(&self) -> FVector {
        let [s1, s2] = &self.sigma;
        let size = |w: &Word| self.rep.subgroup_closure(std::slice::from_ref(w)).order();
        FVector {
            vertices: self.order / size(s2),
            edges: self.order / 2,
            faces: self.order / size(s1),
        }
    }

    pub fn f_vector(&self) -> Result<FVector, RotaryError> {
        if self.check_polytopal() {
            Ok(self.f_vector_diagnostic())
        } else {
            Err(RotaryError::NotPolytopal)
        }
    }

    /// Euler characteristic and genus; rotation groups give orientable maps.
    pub fn euler_genus(&self) -> Result<(i64, u64), RotaryError> {
        let chi = self.f_vector_diagnostic().euler();
        if chi % 2 != 0 {
            return Err(RotaryError::OddEuler(chi));
        }
        Ok((chi, ((2 - chi) / 2) as u64))
    }

    pub fn hole_word(&self, j: usize) -> Word {
        let [s1, s2] = &self.sigma;
        s1 * &s2.pow(1 - j as i64)
    }

    /// Length of the j-holes: the period of `σ1 σ2^(1-j)`.
    pub fn hole_length(&self, j: usize) -> Result<usize, RotaryError> {
        let max = self.type_pq[1] / 2;
        if j == 0 || j > max.max(1) {
            return Err(RotaryError::HoleOutOfRange { j, max });
        }
        Ok(self.rep.element_order(&self.hole_word(j)))
    }

    pub fn holes(&self) -> BTreeMap<usize, usize> {
        (2..=self.type_pq[1] / 2)
            .map(|j| (j, self.rep.element_order(&self.hole_word(j))))
            .collect()
    }

    pub fn involution_report(&self) -> InvolutionReport {
        let [s1, s2] = &self.sigma;
        let tau = s1 * s2;
        let n = self
            .rep
            .normal_closure_within(std::slice::from_ref(&tau), &self.sigma);
        let index = self.order / n.order();
        let generated = self.rep.involutions_generate(&self.closure());
        InvolutionReport {
            n_tau_order: n.order(),
            n_tau_index: index,
            group_gen_by_involutions: generated,
            prop62_consistent: !(generated && index > 2),
        }
    }

    pub fn invariants(&self) -> Result<MapInvariants, RotaryError> {
        let f_vector = self.f_vector_diagnostic();
        let (euler, genus) = self.euler_genus()?;
        Ok(MapInvariants {
            schlafli: self.type_pq,
            f_vector,
            euler,
            genus: Some(genus),
            holes: self.holes(),
            zigzags: None,
            chirality: self.classify(),
        })
    }
}

/// Rotation group of a rank-4 chiral or regular polytope.
#[derive(Clone, Debug)]
pub struct RotationGroup4 {
    rep: Arc<GroupRep>,
    sigma: [Word; 3],
    order: usize,
    type_pqr: [usize; 3],
}

impl RotationGroup4 {
    pub fn new(rep: Arc<GroupRep>, sigma: [Word; 3]) -> Result<Self, RotaryError> {
        let [s1, s2, s3] = &sigma;
        require_identity(&rep, &(s1 * s2).pow(2), "(σ1σ2)^2 = ε")?;
        require_identity(&rep, &(s2 * s3).pow(2), "(σ2σ3)^2 = ε")?;
        require_identity(&rep, &product([s1, s2, s3]).pow(2), "(σ1σ2σ3)^2 = ε")?;
        let order = rep.subgroup_closure(&sigma).order();
        let type_pqr = [
            rep.element_order(s1),
            rep.element_order(s2),
            rep.element_order(s3),
        ];
        Ok(RotationGroup4 {
            rep,
            sigma: sigma.map(|w| w.reduced()),
            order,
            type_pqr,
        })
    }

    pub fn from_presentation(p: &Presentation, cap: usize) -> Result<Self, RotaryError> {
        let words = distinguished_words(p, DistinguishedKind::Sigma, 3)?;
        let rep = Arc::new(enumerate(p, cap)?);
        Self::new(rep, words.try_into().expect("three words"))
    }

    pub fn rep(&self) -> &Arc<GroupRep> {
        &self.rep
    }

    pub fn sigma(&self) -> &[Word; 3] {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn schlafli(&self) -> [usize; 3] {
        self.type_pqr
    }

    /// Whether the σ-words generate the whole of the underlying rep.
    pub fn generates_rep(&self) -> bool {
        self.order == self.rep.order()
    }

    fn closure(&self, words: &[&Word]) -> Subgroup {
        let owned: Vec<Word> = words.iter().map(|w| (*w).clone()).collect();
        self.rep.subgroup_closure(&owned)
    }

    /// Intersection condition for rank 4, plus non-trivial rotations.
    pub fn check_polytopal(&self) -> bool {
        if self.type_pqr.iter().any(|&k| k < 2) {
            return false;
        }
        let [s1, s2, s3] = &self.sigma;
        let g1 = self.closure(&[s1]);
        let g2 = self.closure(&[s2]);
        let g3 = self.closure(&[s3]);
        let g12 = self.closure(&[s1, s2]);
        let g23 = self.closure(&[s2, s3]);
        g12.intersection_equals(&g23, &g2)
            && g1.intersection_order(&g2) == 1
            && g2.intersection_order(&g3) == 1
    }

    /// Images `(σ1, σ2σ3², σ3⁻¹)` of conjugation by the last reflection.
    pub fn reflection_images(&self) -> [Word; 3] {
        let [s1, s2, s3] = &self.sigma;
        [s1.clone(), product([s2, s3, s3]), s3.inverse()]
    }

    pub fn is_reflexible(&self) -> bool {
        is_automorphism(&self.rep, &self.sigma, &self.reflection_images())
    }

    pub fn classify(&self) -> Chirality {
        if !self.check_polytopal() {
            Chirality::NotPolytopal
        } else if self.is_reflexible() {
            Chirality::Regular
        } else {
            Chirality::Chiral
        }
    }

    pub fn pi_left(&self) -> Word {
        &self.sigma[0] * &self.sigma[2]
    }

    pub fn pi_right(&self) -> Word {
        &self.sigma[0] * &self.sigma[2].inverse()
    }

    /// Lengths of the left and right Petrie polygons.
    pub fn petrie(&self) -> (usize, usize) {
        (
            self.rep.element_order(&self.pi_left()),
            self.rep.element_order(&self.pi_right()),
        )
    }

    /// Face counts `(f0, f1, f2, f3)` from the stabilizers of the base flag.
    pub fn f_vector(&self) -> [usize; 4] {
        let [s1, s2, s3] = &self.sigma;
        let s12 = s1 * s2;
        let s23 = s2 * s3;
        [
            self.order / self.closure(&[s2, s3]).order(),
            self.order / self.closure(&[&s12, s3]).order(),
            self.order / self.closure(&[s1, &s23]).order(),
            self.order / self.closure(&[s1, s2]).order(),
        ]
    }
}

fn all_subsets_intersection_condition(rep: &GroupRep, gens: &[Word]) -> bool {
    let n = gens.len();
    let subgroups: Vec<Subgroup> = (0..1usize << n)
        .map(|mask| {
            let words: Vec<Word> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| gens[i].clone())
                .collect();
            rep.subgroup_closure(&words)
        })
        .collect();
    for a in 0..1usize << n {
        for b in a + 1..1usize << n {
            if !subgroups[a].intersection_equals(&subgroups[b], &subgroups[a & b]) {
                return false;
            }
        }
    }
    true
}

fn check_string_relations(rep: &GroupRep, rho: &[Word]) -> Result<(), RotaryError> {
    for (i, r) in rho.iter().enumerate() {
        if rep.element_order(r) != 2 {
            return Err(RotaryError::Relation(format!("ρ{i} is an involution")));
        }
    }
    for i in 0..rho.len() {
        for j in i + 2..rho.len() {
            require_identity(
                rep,
                &(&rho[i] * &rho[j]).pow(2),
                &format!("(ρ{i}ρ{j})^2 = ε"),
            )?;
        }
    }
    Ok(())
}

/// The group of a regular 4-polytope with distinguished involutions ρ0..ρ3.
#[derive(Clone, Debug)]
pub struct RegularCGroup4 {
    rep: Arc<GroupRep>,
    rho: [Word; 4],
}

impl RegularCGroup4 {
    /// Checks the involution and commuting relations and the intersection
    /// condition over all pairs of generator subsets.
    pub fn new(rep: Arc<GroupRep>, rho: [Word; 4]) -> Result<Self, RotaryError> {
        check_string_relations(&rep, &rho)?;
        if !all_subsets_intersection_condition(&rep, &rho) {
            return Err(RotaryError::NotPolytopal);
        }
        Ok(RegularCGroup4 {
            rep,
            rho: rho.map(|w| w.reduced()),
        })
    }

    pub fn from_presentation(p: &Presentation, cap: usize) -> Result<Self, RotaryError> {
        let words = distinguished_words(p, DistinguishedKind::Rho, 4)?;
        let rep = Arc::new(enumerate(p, cap)?);
        Self::new(rep, words.try_into().expect("four words"))
    }

    pub fn rep(&self) -> &Arc<GroupRep> {
        &self.rep
    }

    pub fn rho(&self) -> &[Word; 4] {
        &self.rho
    }

    pub fn order(&self) -> usize {
        self.rep.subgroup_closure(&self.rho).order()
    }

    pub fn schlafli(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.rep.element_order(&(&self.rho[i] * &self.rho[i + 1])))
    }

    pub fn sigma_words(&self) -> [Word; 3] {
        [0, 1, 2].map(|i| &self.rho[i] * &self.rho[i + 1])
    }

    /// The rotation subgroup with `σi := ρ(i-1) ρi`.
    ///
    /// When the ρ's are the bare generators and the subgroup has index 2, it
    /// is re-enumerated from a Reidemeister–Schreier presentation on `s1 s2 s3`
    /// (transversal `{ε, ρ0}`, Schreier generators `ρ0ρk`) and checked against
    /// the σ-words inside the full group. Otherwise it is wrapped in place.
    pub fn rotation_subgroup(&self, cap: usize) -> Result<RotationGroup4, RotaryError> {
        let sigma = self.sigma_words();
        let in_place = RotationGroup4::new(self.rep.clone(), sigma.clone())?;
        let bare = self.rep.presentation().generator_count() == 4
            && (0..4).all(|i| self.rho[i] == Word::generator(i));
        if !bare || in_place.order() * 2 != self.rep.order() {
            return Ok(in_place);
        }
        let p = rotation_subgroup_presentation(self.rep.presentation());
        let sub = RotationGroup4::from_presentation(&p, cap)?;
        // σ-relators must hold for the σ-words in the full group, and the
        // orders agree, so the re-enumerated group is the same subgroup.
        let images: Vec<Word> = sigma.to_vec();
        let consistent = sub.order() == in_place.order()
            && p.relators().iter().all(|r| {
                r.substitute(&images)
                    .is_ok_and(|w| self.rep.is_identity(&w))
            });
        if consistent {
            Ok(sub)
        } else {
            Ok(in_place)
        }
    }
}

/// Reidemeister–Schreier rewrite of an involution-generated 4-generator
/// presentation onto `s1 = ρ0ρ1, s2 = ρ1ρ2, s3 = ρ2ρ3`.
fn rotation_subgroup_presentation(p: &Presentation) -> Presentation {
    let s = |i| Word::generator(i);
    // y_k = ρ0 ρk in terms of the σ's
    let y = [Word::identity(), s(0), s(0) * s(1), s(0) * s(1) * s(2)];
    let rewrite = |letters: &[usize]| -> Word {
        let mut out = Word::identity();
        for pair in letters.chunks(2) {
            out = out * y[pair[0]].inverse() * y[pair[1]].clone();
        }
        out.reduced()
    };
    let mut relators = Vec::new();
    let mut sources: Vec<Vec<usize>> = (0..4).map(|k| vec![k, k]).collect();
    sources.extend(
        p.relators()
            .iter()
            .map(|r| r.letters().iter().map(|l: &Letter| l.generator()).collect()),
    );
    for letters in sources {
        if letters.len() % 2 == 1 {
            continue;
        }
        relators.push(rewrite(&letters));
        let mut conj = vec![0];
        conj.extend(&letters);
        conj.push(0);
        relators.push(rewrite(&conj));
    }
    relators.retain(|r| !r.is_empty());
    relators.sort();
    relators.dedup();
    let d = crate::presentation::Distinguished {
        kind: DistinguishedKind::Sigma,
        words: vec![s(0), s(1), s(2)],
    };
    Presentation::new(&["s1", "s2", "s3"], relators, Some(d)).expect("valid rewrite")
}

/// A regular map given by its full group and involutions ρ0, ρ1, ρ2.
#[derive(Clone, Debug)]
pub struct RegularMap3 {
    rep: Arc<GroupRep>,
    rho: [Word; 3],
    order: usize,
}

impl RegularMap3 {
    pub fn new(rep: Arc<GroupRep>, rho: [Word; 3]) -> Result<Self, RotaryError> {
        check_string_relations(&rep, &rho)?;
        let order = rep.subgroup_closure(&rho).order();
        Ok(RegularMap3 {
            rep,
            rho: rho.map(|w| w.reduced()),
            order,
        })
    }

    pub fn from_presentation(p: &Presentation, cap: usize) -> Result<Self, RotaryError> {
        let words = distinguished_words(p, DistinguishedKind::Rho, 3)?;
        let rep = Arc::new(enumerate(p, cap)?);
        Self::new(rep, words.try_into().expect("three words"))
    }

    pub fn rep(&self) -> &Arc<GroupRep> {
        &self.rep
    }

    pub fn rho(&self) -> &[Word; 3] {
        &self.rho
    }

    /// Order of the full group `⟨ρ0, ρ1, ρ2⟩`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Rotation subgroup with `σ1 = ρ0ρ1`, `σ2 = ρ1ρ2`.
    pub fn rotations(&self) -> RotationGroup3 {
        let [r0, r1, r2] = &self.rho;
        RotationGroup3::new(self.rep.clone(), r0 * r1, r1 * r2)
            .expect("(ρ0ρ2)^2 = ε implies (σ1σ2)^2 = ε")
    }

    pub fn schlafli(&self) -> [usize; 2] {
        let [r0, r1, r2] = &self.rho;
        [
            self.rep.element_order(&(r0 * r1)),
            self.rep.element_order(&(r1 * r2)),
        ]
    }

    pub fn is_c_group(&self) -> bool {
        all_subsets_intersection_condition(&self.rep, &self.rho)
    }

    /// Whether the rotation subgroup has index 2 (orientable surface).
    pub fn is_orientable(&self) -> bool {
        self.rotations().order() * 2 == self.order
    }

    /// Length of the j-zigzags: the period of `ρ0 (ρ1ρ2)^j`.
    pub fn zigzag_length(&self, j: usize) -> usize {
        let [r0, r1, r2] = &self.rho;
        self.rep.element_order(&(r0 * &(r1 * r2).pow(j as i64)))
    }

    pub fn petrie_length(&self) -> usize {
        self.zigzag_length(1)
    }

    pub fn hole_length(&self, j: usize) -> Result<usize, RotaryError> {
        self.rotations().hole_length(j)
    }

    pub fn f_vector(&self) -> FVector {
        let [r0, r1, r2] = &self.rho;
        let size = |a: &Word, b: &Word| self.rep.subgroup_closure(&[a.clone(), b.clone()]).order();
        FVector {
            vertices: self.order / size(r1, r2),
            edges: self.order / size(r0, r2),
            faces: self.order / size(r0, r1),
        }
    }

    pub fn invariants(&self) -> Result<MapInvariants, RotaryError> {
        let schlafli = self.schlafli();
        let f_vector = self.f_vector();
        let euler = f_vector.euler();
        let genus = if self.is_orientable() {
            if euler % 2 != 0 {
                return Err(RotaryError::OddEuler(euler));
            }
            Some(((2 - euler) / 2) as u64)
        } else {
            None
        };
        let k = schlafli[1] / 2;
        Ok(MapInvariants {
            schlafli,
            f_vector,
            euler,
            genus,
            holes: self.rotations().holes(),
            zigzags: Some((1..=k.max(1)).map(|j| (j, self.zigzag_length(j))).collect()),
            chirality: if self.is_c_group() {
                Chirality::Regular
            } else {
                Chirality::NotPolytopal
            },
        })
    }
}
