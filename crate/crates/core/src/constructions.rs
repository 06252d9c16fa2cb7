//! Torus maps, locally toroidal rank-4 presentations, Petrie and central
//! quotients, and the three Petrie–Coxeter map constructions.
//!
//! Translation relators for the torus families are written in the rotation
//! generators. With `σ1` the face rotation and `σ2` the vertex rotation:
//!
//! | family | `τ1`            | `τ2`              | relator             |
//! |--------|-----------------|-------------------|---------------------|
//! | {4,4}  | `σ2⁻¹ σ1`       | `σ1 σ2⁻¹`         | `τ1^b τ2^c`         |
//! | {3,6}  | `σ2⁻¹ σ1 σ2⁻¹`  | `σ1 σ2⁻²`         | `τ1^b τ2^c`         |
//! | {6,3}  | `σ1 σ2⁻¹ σ1`    | `σ2⁻¹ σ1²`        | `τ1^b τ2^c`         |
//!
//! The {6,3} words are the {3,6} words under `σ1 ↦ σ2⁻¹, σ2 ↦ σ1⁻¹`. These
//! orientations reproduce the lattice orders `4(b²+c²)` and `6(b²+bc+c²)`
//! and, with the vertex-figure relator written in `(σ2, σ3)` with its `(b,c)`
//! taken as given, the orders 2000, 20160 and 672 of the three locally
//! toroidal examples. Swapping `τ1` and `τ2` gives the enantiomorphic maps with
//! the same orders; the handedness used here is the one for which
//! `{{3,6}_(1,2),{6,3}_(1,2)}` has left and right Petrie polygons of lengths
//! 8 and 14.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{enumerate, EngineError};
use crate::presentation::{product, Distinguished, DistinguishedKind, Presentation, Word};
use crate::rotary::{
    Chirality, RegularCGroup4, RegularMap3, RotaryError, RotationGroup3, RotationGroup4,
};
use crate::selfdual::{ExtendedGroup, SelfDualError, SelfDualityKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("construction contract violated: {0}")]
    Contract(String),
    #[error("torus parameters (b, c) = (0, 0) give no lattice")]
    ZeroLattice,
    #[error("facet {facet} and vertex-figure {vertex_figure} do not fit together")]
    MismatchedFamilies {
        facet: TorusKind,
        vertex_figure: TorusKind,
    },
    #[error("enumerated order {got} differs from the lattice order {expected}")]
    OracleMismatch { expected: usize, got: usize },
    #[error("expected a {expected} extended group, got {got}")]
    WrongKind {
        expected: SelfDualityKind,
        got: SelfDualityKind,
    },
    #[error("quotient needs the distinguished words to generate the whole group")]
    NotGenerating,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rotary(#[from] RotaryError),
    #[error(transparent)]
    SelfDual(#[from] SelfDualError),
}

fn contract(ok: bool, what: &str) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Contract(what.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum TorusKind {
    #[serde(rename = "4,4")]
    Square,
    #[serde(rename = "3,6")]
    Triangular,
    #[serde(rename = "6,3")]
    Hexagonal,
}

impl TorusKind {
    /// Schläfli type `{p, q}`.
    pub fn schlafli(self) -> [usize; 2] {
        match self {
            TorusKind::Square => [4, 4],
            TorusKind::Triangular => [3, 6],
            TorusKind::Hexagonal => [6, 3],
        }
    }

    /// Order of the rotation part of the group: 4 or 6.
    fn rotation_order(self) -> usize {
        match self {
            TorusKind::Square => 4,
            _ => 6,
        }
    }

    /// The two translations, as words over the two rotation generators.
    fn translations(self) -> [Word; 2] {
        match self {
            TorusKind::Square => [Word::from_signed(&[-2, 1]), Word::from_signed(&[1, -2])],
            TorusKind::Triangular => [
                Word::from_signed(&[-2, 1, -2]),
                Word::from_signed(&[1, -2, -2]),
            ],
            TorusKind::Hexagonal => [
                Word::from_signed(&[1, -2, 1]),
                Word::from_signed(&[-2, 1, 1]),
            ],
        }
    }
}

impl fmt::Display for TorusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = self.schlafli();
        write!(f, "{{{p},{q}}}")
    }
}

impl std::str::FromStr for TorusKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !"{} ".contains(*c)).collect();
        match cleaned.as_str() {
            "4,4" => Ok(TorusKind::Square),
            "3,6" => Ok(TorusKind::Triangular),
            "6,3" => Ok(TorusKind::Hexagonal),
            _ => Err(format!(
                "unknown torus family {s:?}; expected 4,4 or 3,6 or 6,3"
            )),
        }
    }
}

/// A torus map `{p,q}_(b,c)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TorusFamily {
    pub kind: TorusKind,
    pub b: u32,
    pub c: u32,
}

impl TorusFamily {
    pub fn new(kind: TorusKind, b: u32, c: u32) -> Result<Self, ConstructionError> {
        if b == 0 && c == 0 {
            return Err(ConstructionError::ZeroLattice);
        }
        Ok(TorusFamily { kind, b, c })
    }

    /// Whether the map admits reflections, by the lattice criterion.
    /// File-name form, e.g. `torus-44-1-3`.
    pub fn file_stem(&self) -> String {
        let [p, q] = self.kind.schlafli();
        format!("torus-{p}{q}-{}-{}", self.b, self.c)
    }

    pub fn expected_regular(&self) -> bool {
        self.b == 0 || self.c == 0 || self.b == self.c
    }

    /// Whether the map is a polytope: all but the one-vertex maps and
    /// `{4,4}_(1,1)`, whose faces repeat vertices.
    pub fn expected_polytopal(&self) -> bool {
        let small = self.b + self.c == 1;
        !(small || (self.kind == TorusKind::Square && (self.b, self.c) == (1, 1)))
    }

    /// The translation relator written over generators `x` (face rotation)
    /// and `y` (vertex rotation).
    pub fn translation_relator(&self, x: usize, y: usize) -> Word {
        let [t1, t2] = self.kind.translations();
        let map = |w: Word| {
            w.substitute(&[Word::generator(x), Word::generator(y)])
                .expect("two images")
        };
        (map(t1).pow(self.b as i64) * map(t2).pow(self.c as i64)).reduced()
    }

    /// `gens s1 s2` with the type relators and the translation relator.
    pub fn presentation(&self) -> Presentation {
        let [p, q] = self.kind.schlafli();
        let s1 = Word::generator(0);
        let s2 = Word::generator(1);
        let relators = vec![
            s1.pow(p as i64),
            s2.pow(q as i64),
            (&s1 * &s2).pow(2),
            self.translation_relator(0, 1),
        ];
        let d = Distinguished {
            kind: DistinguishedKind::Sigma,
            words: vec![s1, s2],
        };
        Presentation::new(&["s1", "s2"], relators, Some(d)).expect("well-formed torus presentation")
    }
}

impl fmt::Display for TorusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_({},{})", self.kind, self.b, self.c)
    }
}

/// Group order, cell counts and reflexibility of a torus map, computed
/// directly from the lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LatticeData {
    pub order: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub reflexible: bool,
}

/// Sublattice of `Z²` in Hermite normal form, spanned by `(a, b)` and `(0, d)`.
#[derive(Clone, Copy, Debug)]
struct Lattice {
    a: i64,
    b: i64,
    d: i64,
}

fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        (x.abs(), x.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(y, x.rem_euclid(y));
        (g, t, s - x.div_euclid(y) * t)
    }
}

fn gcd(x: i64, y: i64) -> i64 {
    ext_gcd(x, y).0
}

impl Lattice {
    fn spanned_by(vectors: &[(i64, i64)]) -> Lattice {
        let mut pivot = (0i64, 0i64);
        let mut d = 0i64;
        for &(x, y) in vectors {
            if x == 0 {
                d = gcd(d, y);
                continue;
            }
            let (g, s, t) = ext_gcd(pivot.0, x);
            let combined = (s * pivot.0 + t * x, s * pivot.1 + t * y);
            let leftover = (x / g) * pivot.1 - (pivot.0 / g) * y;
            d = gcd(d, leftover);
            pivot = combined;
        }
        assert!(pivot.0 != 0 && d != 0, "lattice has full rank");
        let (a, b) = if pivot.0 < 0 {
            (-pivot.0, -pivot.1)
        } else {
            pivot
        };
        Lattice {
            a,
            b: b.rem_euclid(d),
            d,
        }
    }

    fn index(&self) -> usize {
        (self.a * self.d) as usize
    }

    fn reduce(&self, (x, y): (i64, i64)) -> (i64, i64) {
        let q = x.div_euclid(self.a);
        (x - q * self.a, (y - q * self.b).rem_euclid(self.d))
    }

    fn contains(&self, v: (i64, i64)) -> bool {
        self.reduce(v) == (0, 0)
    }
}

/// Orientation-preserving symmetry `x ↦ R^k x + u` of the square or
/// triangular lattice, with the translation reduced modulo the sublattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Motion {
    u: (i64, i64),
    k: usize,
}

struct TorusModel {
    lattice: Lattice,
    m: usize,
}

impl TorusModel {
    fn rotate(&self, (x, y): (i64, i64), k: usize) -> (i64, i64) {
        (0..k % self.m).fold((x, y), |(x, y), _| {
            if self.m == 4 {
                (-y, x)
            } else {
                // 60° turn in the basis e1, e2 = e1 turned by 60°
                (-y, x + y)
            }
        })
    }

    /// Apply `f`, then `g`.
    fn compose(&self, f: Motion, g: Motion) -> Motion {
        let r = self.rotate(f.u, g.k);
        Motion {
            u: self.lattice.reduce((r.0 + g.u.0, r.1 + g.u.1)),
            k: (f.k + g.k) % self.m,
        }
    }

    fn inverse(&self, f: Motion) -> Motion {
        let k = (self.m - f.k) % self.m;
        let r = self.rotate(f.u, k);
        Motion {
            u: self.lattice.reduce((-r.0, -r.1)),
            k,
        }
    }

    fn closure(&self, gens: &[Motion]) -> usize {
        let id = Motion { u: (0, 0), k: 0 };
        let mut seen = HashMap::from([(id, ())]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.compose(x, g);
                if seen.insert(y, ()).is_none() {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    fn order_of(&self, f: Motion) -> usize {
        let id = Motion { u: (0, 0), k: 0 };
        let mut x = f;
        let mut n = 1;
        while x != id {
            x = self.compose(x, f);
            n += 1;
        }
        n
    }
}

/// Builds the rotation group of `{p,q}_(b,c)` as motions of the plane modulo
/// the sublattice spanned by `(b,c)` and its rotations, and counts it by
/// closure.
pub fn lattice_torus_oracle(t: &TorusFamily) -> LatticeData {
    let m = t.kind.rotation_order();
    let v = (t.b as i64, t.c as i64);
    let probe = TorusModel {
        lattice: Lattice { a: 1, b: 0, d: 1 },
        m,
    };
    let spanning: Vec<(i64, i64)> = (0..m).map(|k| probe.rotate(v, k)).collect();
    let model = TorusModel {
        lattice: Lattice::spanned_by(&spanning),
        m,
    };
    // face rotation and vertex rotation of the {4,4} or {3,6} tessellation
    let face = Motion {
        u: model.lattice.reduce((1, 0)),
        k: if m == 4 { 1 } else { 2 },
    };
    let vertex = Motion { u: (0, 0), k: 1 };
    let (s1, s2) = match t.kind {
        TorusKind::Hexagonal => (model.inverse(vertex), model.inverse(face)),
        _ => (face, vertex),
    };
    debug_assert_eq!(model.order_of(model.compose(s1, s2)), 2);
    let order = model.closure(&[s1, s2]);
    let n = model.lattice.index();
    let (vertices, edges, faces) = match t.kind {
        TorusKind::Square => (n, 2 * n, n),
        TorusKind::Triangular => (n, 3 * n, 2 * n),
        TorusKind::Hexagonal => (2 * n, 3 * n, n),
    };
    let mirror = match t.kind {
        TorusKind::Square => (v.0, -v.1),
        _ => (v.0 + v.1, -v.1),
    };
    LatticeData {
        order,
        vertices,
        edges,
        faces,
        reflexible: model.lattice.contains(mirror),
    }
}

/// Enumerates the torus map and checks its order against the lattice model.
pub fn torus_map(t: &TorusFamily, cap: usize) -> Result<RotationGroup3, ConstructionError> {
    let m = RotationGroup3::from_presentation(&t.presentation(), cap)?;
    let expected = lattice_torus_oracle(t).order;
    if m.order() != expected {
        return Err(ConstructionError::OracleMismatch {
            expected,
            got: m.order(),
        });
    }
    Ok(m)
}

/// `{facet, vertex-figure}` with toroidal facets and vertex-figures.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LocallyToroidalSpec {
    pub facet: TorusFamily,
    pub vertex_figure: TorusFamily,
}

impl LocallyToroidalSpec {
    pub fn new(facet: TorusFamily, vertex_figure: TorusFamily) -> Result<Self, ConstructionError> {
        if facet.kind.schlafli()[1] != vertex_figure.kind.schlafli()[0] {
            return Err(ConstructionError::MismatchedFamilies {
                facet: facet.kind,
                vertex_figure: vertex_figure.kind,
            });
        }
        Ok(LocallyToroidalSpec {
            facet,
            vertex_figure,
        })
    }

    pub fn schlafli(&self) -> [usize; 3] {
        let [p, q] = self.facet.kind.schlafli();
        [p, q, self.vertex_figure.kind.schlafli()[1]]
    }

    pub fn presentation(&self) -> Presentation {
        let [p, q, r] = self.schlafli();
        let s: Vec<Word> = (0..3).map(Word::generator).collect();
        let relators = vec![
            s[0].pow(p as i64),
            s[1].pow(q as i64),
            s[2].pow(r as i64),
            (&s[0] * &s[1]).pow(2),
            (&s[1] * &s[2]).pow(2),
            product(&s).pow(2),
            self.facet.translation_relator(0, 1),
            self.vertex_figure.translation_relator(1, 2),
        ];
        let d = Distinguished {
            kind: DistinguishedKind::Sigma,
            words: s,
        };
        Presentation::new(&["s1", "s2", "s3"], relators, Some(d))
            .expect("well-formed rank-4 presentation")
    }
}

impl fmt::Display for LocallyToroidalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.facet, self.vertex_figure)
    }
}

pub fn locally_toroidal(
    spec: &LocallyToroidalSpec,
    cap: usize,
) -> Result<RotationGroup4, ConstructionError> {
    Ok(RotationGroup4::from_presentation(
        &spec.presentation(),
        cap,
    )?)
}

/// The rep's presentation with the σ-words recorded as its `sigma` line.
fn sigma_presentation(m: &RotationGroup4) -> Presentation {
    m.rep()
        .presentation()
        .with_distinguished(Some(Distinguished {
            kind: DistinguishedKind::Sigma,
            words: m.sigma().to_vec(),
        }))
        .expect("three σ-words are a valid sigma line")
}

/// Adds the relator `(σ1σ3)^k` and re-enumerates.
pub fn petrie_quotient(
    m: &RotationGroup4,
    k: usize,
    cap: usize,
) -> Result<RotationGroup4, ConstructionError> {
    quotient_by(m, [m.pi_left().pow(k as i64)], cap)
}

/// Quotient by the whole centre, added as relators via the Schreier words of
/// the central elements.
pub fn central_quotient(
    m: &RotationGroup4,
    cap: usize,
) -> Result<RotationGroup4, ConstructionError> {
    let rep = m.rep();
    let centre = rep.center();
    let words: Vec<Word> = centre
        .elements()
        .iter()
        .filter(|x| x.index() != 0)
        .map(|&x| rep.element_word(x).clone())
        .collect();
    quotient_by(m, words, cap)
}

fn quotient_by(
    m: &RotationGroup4,
    extra: impl IntoIterator<Item = Word>,
    cap: usize,
) -> Result<RotationGroup4, ConstructionError> {
    if !m.generates_rep() {
        return Err(ConstructionError::NotGenerating);
    }
    let p = sigma_presentation(m).with_relators(extra);
    let rep = Arc::new(enumerate(&p, cap)?);
    Ok(RotationGroup4::new(rep, m.sigma().clone())?)
}

/// The chiral map with `κ1 = δ`, `κ2 = σ1σ2δ⁻¹` from an improper extension.
pub fn pc_map_improper(e: &ExtendedGroup) -> Result<RotationGroup3, ConstructionError> {
    if e.kind() != SelfDualityKind::Improper {
        return Err(ConstructionError::WrongKind {
            expected: SelfDualityKind::Improper,
            got: e.kind(),
        });
    }
    let g = e.rep();
    let [s1, s2, s3] = <[Word; 3]>::try_from(e.distinguished().to_vec()).expect("three σ-words");
    let d = e.duality();
    let k1 = d.clone();
    let k2 = product([&s1, &s2, &d.inverse()]);
    let [p, q, _] = <[usize; 3]>::try_from(e.base_type().to_vec()).expect("rank 4");
    contract(g.element_order(&k1) == 4, "κ1 has order 4")?;
    contract(g.element_order(&k2) == 2 * q, "κ2 has order 2q")?;
    contract(g.element_order(&(&k1 * &k2)) == 2, "κ1κ2 is an involution")?;
    contract(
        g.element_order(&(&k1 * &k2.inverse())) == p,
        "κ1κ2⁻¹ has order p",
    )?;
    contract(
        g.equal(&(&k1 * &k2.inverse()), &s3.inverse()),
        "κ1κ2⁻¹ = σ3⁻¹",
    )?;
    contract(g.equal(&s1, &(&d.pow(2) * &(&s2 * &s3))), "σ1 = δ²σ2σ3")?;
    contract(g.equal(&s1, &(&k1.inverse() * &k2)), "σ1 = κ1⁻¹κ2")?;
    contract(g.equal(&s2, &k2.pow(-2)), "σ2 = κ2⁻²")?;
    contract(g.equal(&s3, &(&k2 * &k1.inverse())), "σ3 = κ2κ1⁻¹")?;
    contract(g.equal(&k2.pow(2), &s2.inverse()), "κ2² = σ2⁻¹")?;
    let map = RotationGroup3::new(g.clone(), k1, k2)?;
    contract(
        map.order() == e.order(),
        "κ1, κ2 generate the extended group",
    )?;
    contract(map.check_polytopal(), "⟨κ1⟩ ∩ ⟨κ2⟩ = {ε}")?;
    let expected = match e.base_chirality() {
        Chirality::Chiral => Chirality::Chiral,
        _ => Chirality::Regular,
    };
    contract(map.classify() == expected, "map chirality matches the base")?;
    contract(map.hole_length(2).ok() == Some(p), "2-holes have length p")?;
    Ok(map)
}

/// The regular map with `(τ0, τ1, τ2) = (σ1σ2σ3, σ1σ2, ω)` from a proper
/// extension.
pub fn pc_map_proper(e: &ExtendedGroup) -> Result<RegularMap3, ConstructionError> {
    if e.kind() != SelfDualityKind::Proper {
        return Err(ConstructionError::WrongKind {
            expected: SelfDualityKind::Proper,
            got: e.kind(),
        });
    }
    let g = e.rep();
    let [s1, s2, s3] = <[Word; 3]>::try_from(e.distinguished().to_vec()).expect("three σ-words");
    let [p, q, _] = <[usize; 3]>::try_from(e.base_type().to_vec()).expect("rank 4");
    let t0 = product([&s1, &s2, &s3]);
    let t1 = &s1 * &s2;
    let t2 = e.duality().clone();
    let s = g.element_order(&(&s1 * &s3));
    let t = g.element_order(&(&s1 * &s3.inverse()));
    contract(g.equal(&(&t0 * &t2), &(&t2 * &t0)), "τ0 and τ2 commute")?;
    let map = RegularMap3::new(g.clone(), [t0.clone(), t1.clone(), t2.clone()])?;
    contract(
        map.order() == e.order(),
        "τ0, τ1, τ2 generate the extended group",
    )?;
    contract(map.schlafli() == [p, 2 * s], "type is {p, 2s}")?;
    contract(map.schlafli()[1] % 2 == 0, "τ1τ2 has even order")?;
    contract(map.petrie_length() == 2 * t, "τ0τ1τ2 has order 2t")?;
    contract(map.zigzag_length(2) == q, "τ0(τ1τ2)² has order q")?;
    contract(
        map.is_c_group(),
        "τ-generators satisfy the intersection condition",
    )?;
    Ok(map)
}

/// The regular map with `(τ0, τ1, τ2) = (ρ0, ω, ρ2)` from a polarity
/// extension.
pub fn pc_map_regular(e: &ExtendedGroup) -> Result<RegularMap3, ConstructionError> {
    if e.kind() != SelfDualityKind::RegularPolarity {
        return Err(ConstructionError::WrongKind {
            expected: SelfDualityKind::RegularPolarity,
            got: e.kind(),
        });
    }
    let g = e.rep();
    let rho = e.distinguished();
    let w = e.duality();
    let [p, q, _] = <[usize; 3]>::try_from(e.base_type().to_vec()).expect("rank 4");
    let map = RegularMap3::new(g.clone(), [rho[0].clone(), w.clone(), rho[2].clone()])?;
    contract(
        map.order() == e.order(),
        "ρ0, ω, ρ2 generate the extended group",
    )?;
    contract(map.schlafli() == [4, 2 * q], "type is {4, 2q}")?;
    contract(map.hole_length(2).ok() == Some(p), "2-holes have length p")?;
    contract(
        map.is_c_group(),
        "ρ0, ω, ρ2 satisfy the intersection condition",
    )?;
    // (ρ3, ρ3δ, ρ1) with δ = ωρ0 is the ω-conjugate of (ρ0, ω, ρ2)
    let delta = w * &rho[0];
    let dual = [rho[3].clone(), &rho[3] * &delta, rho[1].clone()];
    let ours = [rho[0].clone(), w.clone(), rho[2].clone()];
    for (a, b) in ours.iter().zip(&dual) {
        contract(
            g.equal(&product([w, a, w]), b),
            "dual generators are ω-conjugates",
        )?;
    }
    Ok(map)
}

/// Index of `⟨κ1, κ2⟩` (with `κ1 = ωρ0`, `κ2 = ρ0ρ2 (ωρ0)⁻¹`) in the
/// polarity extension.
pub fn regular_kappa_index(e: &ExtendedGroup) -> usize {
    let rho = e.distinguished();
    let delta = e.duality() * &rho[0];
    let k2 = product([&rho[0], &rho[2], &delta.inverse()]);
    let lambda = e.rep().subgroup_closure(&[delta, k2]);
    e.order() / lambda.order()
}

/// How a catalog entry is built.
#[derive(Clone, Debug)]
pub enum Recipe {
    Torus(TorusFamily),
    LocallyToroidal(LocallyToroidalSpec),
    PetrieQuotient(LocallyToroidalSpec, usize),
    CentralQuotient(LocallyToroidalSpec),
    /// The regular 4-simplex as a C-group.
    Simplex,
}

/// Expected values of the Petrie–Coxeter map induced by a catalog entry.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ExpectedMap {
    pub group_order: usize,
    pub schlafli: [usize; 2],
    pub chirality: Option<Chirality>,
    pub hole2: Option<usize>,
    pub petrie: Option<usize>,
    pub zigzag2: Option<usize>,
    pub f_vector: Option<[usize; 3]>,
    pub genus: Option<u64>,
    pub generated_by_involutions: Option<bool>,
}

/// Expected analysis of a catalog entry; `None` fields are not checked.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Expected {
    pub group_order: usize,
    pub schlafli: Vec<usize>,
    pub polytopal: Option<bool>,
    pub chirality: Option<Chirality>,
    pub self_duality: Option<SelfDualityKind>,
    pub petrie: Option<(usize, usize)>,
    pub f_vector: Option<Vec<usize>>,
    pub map: Option<ExpectedMap>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: String,
    pub recipe: Recipe,
    pub expected: Expected,
}

const SIMPLEX: &str = "gens r0 r1 r2 r3
rel r0^2
rel r1^2
rel r2^2
rel r3^2
rel (r0 r1)^3
rel (r1 r2)^3
rel (r2 r3)^3
rel (r0 r2)^2
rel (r0 r3)^2
rel (r1 r3)^2
rho r0, r1, r2, r3
";

impl CatalogEntry {
    /// The entry as a presentation, enumerating a base group where the
    /// recipe needs one (central quotients).
    pub fn presentation(&self, cap: usize) -> Result<Presentation, ConstructionError> {
        Ok(match &self.recipe {
            Recipe::Torus(t) => t.presentation(),
            Recipe::LocallyToroidal(s) => s.presentation(),
            Recipe::PetrieQuotient(s, k) => {
                let s1s3 = Word::from_signed(&[1, 3]);
                s.presentation().with_relators([s1s3.pow(*k as i64)])
            }
            Recipe::CentralQuotient(s) => {
                let base = locally_toroidal(s, cap)?;
                sigma_presentation(&central_quotient(&base, cap)?)
            }
            Recipe::Simplex => crate::presentation::parse_presentation(SIMPLEX)
                .expect("built-in presentation parses"),
        })
    }
}

/// Expected analysis of a torus map, from the lattice model.
pub fn expected_torus(t: &TorusFamily) -> Expected {
    let lattice = lattice_torus_oracle(t);
    let polytopal = t.expected_polytopal();
    Expected {
        group_order: lattice.order,
        schlafli: t.kind.schlafli().to_vec(),
        polytopal: Some(polytopal),
        chirality: Some(if !polytopal {
            Chirality::NotPolytopal
        } else if t.expected_regular() {
            Chirality::Regular
        } else {
            Chirality::Chiral
        }),
        self_duality: Some(SelfDualityKind::None),
        f_vector: Some(vec![lattice.vertices, lattice.edges, lattice.faces]),
        ..Expected::default()
    }
}

fn torus_entry(name: &'static str, kind: TorusKind, b: u32, c: u32) -> CatalogEntry {
    let t = TorusFamily::new(kind, b, c).expect("non-zero lattice");
    debug_assert_eq!(t.file_stem(), name);
    CatalogEntry {
        name,
        description: format!("torus map {t}"),
        recipe: Recipe::Torus(t),
        expected: expected_torus(&t),
    }
}

/// Built-in examples with their expected invariants.
pub fn catalog() -> Vec<CatalogEntry> {
    use TorusKind::*;
    let fam = |k, b, c| TorusFamily::new(k, b, c).expect("non-zero lattice");
    let ex1 = LocallyToroidalSpec::new(fam(Square, 1, 3), fam(Square, 1, 3)).expect("dual pair");
    let ex2 =
        LocallyToroidalSpec::new(fam(Hexagonal, 1, 2), fam(Triangular, 2, 1)).expect("dual pair");
    let ex3 =
        LocallyToroidalSpec::new(fam(Triangular, 1, 2), fam(Hexagonal, 1, 2)).expect("dual pair");
    let chiral_improper = |order, petrie: usize, map_order| Expected {
        group_order: order,
        schlafli: vec![6, 3, 6],
        polytopal: Some(true),
        chirality: Some(Chirality::Chiral),
        self_duality: Some(SelfDualityKind::Improper),
        petrie: Some((petrie, petrie)),
        f_vector: None,
        map: Some(ExpectedMap {
            group_order: map_order,
            schlafli: [4, 6],
            chirality: Some(Chirality::Chiral),
            hole2: Some(6),
            generated_by_involutions: Some(true),
            ..ExpectedMap::default()
        }),
    };
    vec![
        CatalogEntry {
            name: "ex1",
            description: format!("{ex1}, improperly self-dual chiral 4-polytope"),
            recipe: Recipe::LocallyToroidal(ex1),
            expected: Expected {
                group_order: 2000,
                schlafli: vec![4, 4, 4],
                polytopal: Some(true),
                chirality: Some(Chirality::Chiral),
                self_duality: Some(SelfDualityKind::Improper),
                petrie: None,
                f_vector: None,
                map: Some(ExpectedMap {
                    group_order: 4000,
                    schlafli: [4, 8],
                    chirality: Some(Chirality::Chiral),
                    hole2: Some(4),
                    f_vector: Some([500, 2000, 1000]),
                    genus: Some(251),
                    generated_by_involutions: Some(false),
                    ..ExpectedMap::default()
                }),
            },
        },
        CatalogEntry {
            name: "ex2",
            description: format!("{ex2}, improperly self-dual chiral 4-polytope"),
            recipe: Recipe::LocallyToroidal(ex2),
            expected: chiral_improper(20160, 28, 40320),
        },
        CatalogEntry {
            name: "ex2q14",
            description: format!("{ex2} with (σ1σ3)^14 = ε"),
            recipe: Recipe::PetrieQuotient(ex2, 14),
            expected: chiral_improper(10080, 14, 20160),
        },
        CatalogEntry {
            name: "ex2q7",
            description: format!("{ex2} with (σ1σ3)^7 = ε"),
            recipe: Recipe::PetrieQuotient(ex2, 7),
            expected: chiral_improper(5040, 7, 10080),
        },
        CatalogEntry {
            name: "ex3",
            description: format!("{ex3}, properly self-dual chiral 4-polytope"),
            recipe: Recipe::LocallyToroidal(ex3),
            expected: Expected {
                group_order: 672,
                schlafli: vec![3, 6, 3],
                polytopal: Some(true),
                chirality: Some(Chirality::Chiral),
                self_duality: Some(SelfDualityKind::Proper),
                petrie: Some((8, 14)),
                f_vector: None,
                map: Some(ExpectedMap {
                    group_order: 1344,
                    schlafli: [3, 16],
                    chirality: Some(Chirality::Regular),
                    petrie: Some(28),
                    zigzag2: Some(6),
                    f_vector: Some([42, 336, 224]),
                    genus: Some(36),
                    ..ExpectedMap::default()
                }),
            },
        },
        CatalogEntry {
            name: "ex3-central-quotient",
            description: format!("{ex3} modulo its centre"),
            recipe: Recipe::CentralQuotient(ex3),
            expected: Expected {
                group_order: 336,
                schlafli: vec![3, 6, 3],
                polytopal: Some(true),
                chirality: Some(Chirality::Chiral),
                self_duality: Some(SelfDualityKind::Proper),
                petrie: Some((4, 7)),
                f_vector: None,
                map: Some(ExpectedMap {
                    group_order: 672,
                    schlafli: [3, 8],
                    chirality: Some(Chirality::Regular),
                    petrie: Some(14),
                    f_vector: Some([42, 168, 112]),
                    genus: Some(8),
                    ..ExpectedMap::default()
                }),
            },
        },
        CatalogEntry {
            name: "simplex333",
            description: "regular 4-simplex {3,3,3}".to_string(),
            recipe: Recipe::Simplex,
            expected: Expected {
                group_order: 120,
                schlafli: vec![3, 3, 3],
                polytopal: Some(true),
                chirality: Some(Chirality::Regular),
                self_duality: Some(SelfDualityKind::RegularPolarity),
                petrie: Some((5, 5)),
                f_vector: Some(vec![5, 10, 10, 5]),
                map: Some(ExpectedMap {
                    group_order: 240,
                    schlafli: [4, 6],
                    chirality: Some(Chirality::Regular),
                    hole2: Some(3),
                    f_vector: Some([20, 60, 30]),
                    genus: Some(6),
                    ..ExpectedMap::default()
                }),
            },
        },
        torus_entry("torus-44-1-0", Square, 1, 0),
        torus_entry("torus-44-1-1", Square, 1, 1),
        torus_entry("torus-44-2-0", Square, 2, 0),
        torus_entry("torus-44-1-3", Square, 1, 3),
        torus_entry("torus-36-1-2", Triangular, 1, 2),
        torus_entry("torus-63-1-2", Hexagonal, 1, 2),
    ]
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// Builds the C-group of a `Simplex` recipe.
pub fn simplex_c_group(cap: usize) -> Result<RegularCGroup4, ConstructionError> {
    let p = crate::presentation::parse_presentation(SIMPLEX).expect("built-in presentation parses");
    Ok(RegularCGroup4::from_presentation(&p, cap)?)
}
