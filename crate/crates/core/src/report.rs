//! Aggregated analysis reports, the Petrie–Coxeter pipeline on presentations,
//! and verification of catalog entries.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{
    catalog, pc_map_improper, pc_map_proper, pc_map_regular, CatalogEntry, ConstructionError,
    Expected, ExpectedMap,
};
use crate::engine::{enumerate, EngineError};
use crate::presentation::{Distinguished, DistinguishedKind, Presentation, Word};
use crate::rotary::{
    Chirality, InvolutionReport, RegularCGroup4, RegularMap3, RotaryError, RotationGroup3,
    RotationGroup4,
};
use crate::selfdual::{
    detect_self_duality, extend_improper, extend_polarity, extend_proper, find_polarity,
    ExtendedGroup, SelfDualError, SelfDualityKind,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("presentation needs a sigma or rho line to fix its rank")]
    NoDistinguished,
    #[error("{kind} line with {words} words is not supported")]
    UnsupportedRank { kind: &'static str, words: usize },
    #[error("not self-dual: no duality of the normalized form extends")]
    NotSelfDual,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rotary(#[from] RotaryError),
    #[error(transparent)]
    SelfDual(#[from] SelfDualError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

impl AnalysisError {
    /// The engine failure underneath, however deeply wrapped.
    pub fn engine_error(&self) -> Option<&EngineError> {
        fn rotary(e: &RotaryError) -> Option<&EngineError> {
            match e {
                RotaryError::Engine(e) => Some(e),
                _ => None,
            }
        }
        fn selfdual(e: &SelfDualError) -> Option<&EngineError> {
            match e {
                SelfDualError::Engine(e) => Some(e),
                SelfDualError::Rotary(e) => rotary(e),
                _ => None,
            }
        }
        match self {
            AnalysisError::Engine(e) => Some(e),
            AnalysisError::Rotary(e) => rotary(e),
            AnalysisError::SelfDual(e) => selfdual(e),
            AnalysisError::Construction(e) => match e {
                ConstructionError::Engine(e) => Some(e),
                ConstructionError::Rotary(e) => rotary(e),
                ConstructionError::SelfDual(e) => selfdual(e),
                _ => None,
            },
            _ => None,
        }
    }

    /// Engine failures (cap exceeded and the like) as opposed to verdicts
    /// about the group.
    pub fn is_operational(&self) -> bool {
        self.engine_error().is_some()
            || matches!(
                self,
                AnalysisError::NoDistinguished | AnalysisError::UnsupportedRank { .. }
            )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Petrie {
    pub left: usize,
    pub right: usize,
}

/// Everything computed about one presentation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub group_order: usize,
    pub schlafli: Vec<usize>,
    pub polytopal: bool,
    pub chirality: Chirality,
    pub self_duality: SelfDualityKind,
    pub petrie: Option<Petrie>,
    pub holes: BTreeMap<String, usize>,
    pub zigzags: Option<BTreeMap<String, usize>>,
    pub f_vector: Vec<usize>,
    pub euler: Option<i64>,
    pub genus: Option<u64>,
    pub involutions: Option<InvolutionReport>,
    pub warnings: Vec<String>,
}

fn keyed(map: &BTreeMap<usize, usize>) -> BTreeMap<String, usize> {
    map.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Warnings for relators `σi^k` whose exponent exceeds the actual order.
fn exponent_warnings(
    rep: &crate::engine::GroupRep,
    words: &[Word],
    symbol: &str,
    offset: usize,
) -> Vec<String> {
    let mut out = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if w.is_empty() {
            continue;
        }
        let actual = rep.element_order(w);
        for r in rep.presentation().relators() {
            if r.len() % w.len() != 0 {
                continue;
            }
            let k = (r.len() / w.len()) as i64;
            if (*r == w.pow(k) || *r == w.pow(-k)) && actual as i64 != k {
                out.push(format!(
                    "{symbol}{} has nominal exponent {k} but order {actual}",
                    i + offset
                ));
            }
        }
    }
    out
}

pub fn report_rotation3(m: &RotationGroup3) -> AnalysisReport {
    let f = m.f_vector_diagnostic();
    let chi = f.euler();
    let mut warnings = exponent_warnings(m.rep(), m.sigma(), "σ", 1);
    let polytopal = m.check_polytopal();
    if !polytopal {
        warnings.push("intersection condition fails; counts are diagnostic".into());
    }
    let genus = if chi % 2 == 0 {
        Some(((2 - chi) / 2) as u64)
    } else {
        warnings.push(format!("odd Euler characteristic {chi}"));
        None
    };
    AnalysisReport {
        schema: SCHEMA_VERSION,
        group_order: m.order(),
        schlafli: m.schlafli().to_vec(),
        polytopal,
        chirality: m.classify(),
        self_duality: SelfDualityKind::None,
        petrie: None,
        holes: keyed(&m.holes()),
        zigzags: None,
        f_vector: f.as_array().to_vec(),
        euler: Some(chi),
        genus,
        involutions: Some(m.involution_report()),
        warnings,
    }
}

pub fn report_rotation4(m: &RotationGroup4) -> AnalysisReport {
    let mut warnings = exponent_warnings(m.rep(), m.sigma(), "σ", 1);
    let polytopal = m.check_polytopal();
    let self_duality = match detect_self_duality(m) {
        Ok(sd) => {
            warnings.extend(sd.note);
            sd.kind
        }
        Err(e) => {
            warnings.push(e.to_string());
            SelfDualityKind::None
        }
    };
    let (left, right) = m.petrie();
    AnalysisReport {
        schema: SCHEMA_VERSION,
        group_order: m.order(),
        schlafli: m.schlafli().to_vec(),
        polytopal,
        chirality: m.classify(),
        self_duality,
        petrie: Some(Petrie { left, right }),
        holes: BTreeMap::new(),
        zigzags: None,
        f_vector: m.f_vector().to_vec(),
        euler: None,
        genus: None,
        involutions: None,
        warnings,
    }
}

pub fn report_regular_map(m: &RegularMap3) -> Result<AnalysisReport, RotaryError> {
    let inv = m.invariants()?;
    let mut warnings = exponent_warnings(m.rep(), m.rho(), "ρ", 0);
    if inv.genus.is_none() {
        warnings.push("rotation subgroup has index 1; genus not reported".into());
    }
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        group_order: m.order(),
        schlafli: inv.schlafli.to_vec(),
        polytopal: inv.chirality != Chirality::NotPolytopal,
        chirality: inv.chirality,
        self_duality: SelfDualityKind::None,
        petrie: None,
        holes: keyed(&inv.holes),
        zigzags: inv.zigzags.as_ref().map(keyed),
        f_vector: inv.f_vector.as_array().to_vec(),
        euler: Some(inv.euler),
        genus: inv.genus,
        involutions: Some(m.rotations().involution_report()),
        warnings,
    })
}

pub fn report_c_group(c: &RegularCGroup4, cap: usize) -> Result<AnalysisReport, RotaryError> {
    let rot = c.rotation_subgroup(cap)?;
    let (left, right) = rot.petrie();
    let self_duality = find_polarity(c).kind;
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        group_order: c.order(),
        schlafli: c.schlafli().to_vec(),
        polytopal: true,
        chirality: Chirality::Regular,
        self_duality,
        petrie: Some(Petrie { left, right }),
        holes: BTreeMap::new(),
        zigzags: None,
        f_vector: rot.f_vector().to_vec(),
        euler: None,
        genus: None,
        involutions: None,
        warnings: exponent_warnings(c.rep(), c.rho(), "ρ", 0),
    })
}

/// Group order and ρ-type only, for a C-group candidate failing the
/// intersection condition.
fn report_failed_c_group(p: &Presentation, cap: usize) -> Result<AnalysisReport, AnalysisError> {
    let rep = enumerate(p, cap)?;
    let rho = &p.distinguished().expect("rho line present").words;
    let order = rep.subgroup_closure(rho).order();
    let schlafli = (0..rho.len() - 1)
        .map(|i| rep.element_order(&(&rho[i] * &rho[i + 1])))
        .collect();
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        group_order: order,
        schlafli,
        polytopal: false,
        chirality: Chirality::NotPolytopal,
        self_duality: SelfDualityKind::None,
        petrie: None,
        holes: BTreeMap::new(),
        zigzags: None,
        f_vector: Vec::new(),
        euler: None,
        genus: None,
        involutions: None,
        warnings: vec!["ρ-generators fail the intersection condition".into()],
    })
}

/// Analyzes a presentation according to its `sigma` or `rho` line.
pub fn analyze(p: &Presentation, cap: usize) -> Result<AnalysisReport, AnalysisError> {
    let d = p.distinguished().ok_or(AnalysisError::NoDistinguished)?;
    match (d.kind, d.words.len()) {
        (DistinguishedKind::Sigma, 2) => Ok(report_rotation3(&RotationGroup3::from_presentation(
            p, cap,
        )?)),
        (DistinguishedKind::Sigma, 3) => Ok(report_rotation4(&RotationGroup4::from_presentation(
            p, cap,
        )?)),
        (DistinguishedKind::Rho, 3) => Ok(report_regular_map(&RegularMap3::from_presentation(
            p, cap,
        )?)?),
        (DistinguishedKind::Rho, 4) => match RegularCGroup4::from_presentation(p, cap) {
            Ok(c) => Ok(report_c_group(&c, cap)?),
            Err(RotaryError::NotPolytopal) => report_failed_c_group(p, cap),
            Err(e) => Err(e.into()),
        },
        (kind, words) => Err(AnalysisError::UnsupportedRank {
            kind: kind.keyword(),
            words,
        }),
    }
}

/// The induced map of a self-dual rank-4 input.
#[derive(Clone, Debug)]
pub struct PetrieCoxeter {
    pub duality: SelfDualityKind,
    pub extended: ExtendedGroup,
    /// Extended-group presentation with the map's `sigma` or `rho` line.
    pub presentation: Presentation,
    pub report: AnalysisReport,
    /// Index of `⟨κ1, κ2⟩` in the extended group (polarity path only).
    pub kappa_index: Option<usize>,
}

fn with_line(e: &ExtendedGroup, kind: DistinguishedKind, words: &[Word]) -> Presentation {
    e.rep()
        .presentation()
        .with_distinguished(Some(Distinguished {
            kind,
            words: words.to_vec(),
        }))
        .expect("map generators form a valid line")
}

/// Detects the duality, builds the extended group and the induced map.
pub fn petrie_coxeter(p: &Presentation, cap: usize) -> Result<PetrieCoxeter, AnalysisError> {
    let d = p.distinguished().ok_or(AnalysisError::NoDistinguished)?;
    match (d.kind, d.words.len()) {
        (DistinguishedKind::Sigma, 3) => {
            let m = RotationGroup4::from_presentation(p, cap)?;
            let sd = detect_self_duality(&m)?;
            match sd.kind {
                SelfDualityKind::Improper => {
                    let e = extend_improper(&m, cap)?;
                    let map = pc_map_improper(&e)?;
                    let presentation = with_line(&e, DistinguishedKind::Sigma, map.sigma());
                    Ok(PetrieCoxeter {
                        duality: sd.kind,
                        report: report_rotation3(&map),
                        extended: e,
                        presentation,
                        kappa_index: None,
                    })
                }
                SelfDualityKind::Proper => {
                    let e = extend_proper(&m, cap)?;
                    let map = pc_map_proper(&e)?;
                    let presentation = with_line(&e, DistinguishedKind::Rho, map.rho());
                    Ok(PetrieCoxeter {
                        duality: sd.kind,
                        report: report_regular_map(&map)?,
                        extended: e,
                        presentation,
                        kappa_index: None,
                    })
                }
                _ => Err(AnalysisError::NotSelfDual),
            }
        }
        (DistinguishedKind::Rho, 4) => {
            let c = RegularCGroup4::from_presentation(p, cap)?;
            let e = extend_polarity(&c, cap).map_err(|err| match err {
                SelfDualError::NotSelfDual(_) => AnalysisError::NotSelfDual,
                other => other.into(),
            })?;
            let map = pc_map_regular(&e)?;
            let presentation = with_line(&e, DistinguishedKind::Rho, map.rho());
            Ok(PetrieCoxeter {
                duality: SelfDualityKind::RegularPolarity,
                report: report_regular_map(&map)?,
                kappa_index: Some(crate::constructions::regular_kappa_index(&e)),
                extended: e,
                presentation,
            })
        }
        (kind, words) => Err(AnalysisError::UnsupportedRank {
            kind: kind.keyword(),
            words,
        }),
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<String>,
    what: &str,
    expected: Option<T>,
    got: T,
) {
    if let Some(e) = expected {
        if e != got {
            out.push(format!("{what}: expected {e:?}, got {got:?}"));
        }
    }
}

/// Differences between a report and the expected values.
pub fn mismatches(expected: &Expected, got: &AnalysisReport) -> Vec<String> {
    let mut out = Vec::new();
    compare(
        &mut out,
        "group order",
        Some(expected.group_order),
        got.group_order,
    );
    compare(
        &mut out,
        "schlafli",
        Some(expected.schlafli.clone()),
        got.schlafli.clone(),
    );
    compare(&mut out, "polytopal", expected.polytopal, got.polytopal);
    compare(&mut out, "chirality", expected.chirality, got.chirality);
    compare(
        &mut out,
        "self-duality",
        expected.self_duality,
        got.self_duality,
    );
    compare(
        &mut out,
        "petrie",
        expected.petrie,
        got.petrie.map(|p| (p.left, p.right)).unwrap_or_default(),
    );
    compare(
        &mut out,
        "f-vector",
        expected.f_vector.clone(),
        got.f_vector.clone(),
    );
    out
}

pub fn map_mismatches(expected: &ExpectedMap, got: &AnalysisReport) -> Vec<String> {
    let mut out = Vec::new();
    let pre = |s: &str| format!("map {s}");
    compare(
        &mut out,
        &pre("group order"),
        Some(expected.group_order),
        got.group_order,
    );
    compare(
        &mut out,
        &pre("schlafli"),
        Some(expected.schlafli.to_vec()),
        got.schlafli.clone(),
    );
    compare(
        &mut out,
        &pre("chirality"),
        expected.chirality,
        got.chirality,
    );
    compare(
        &mut out,
        &pre("2-hole"),
        expected.hole2,
        got.holes.get("2").copied().unwrap_or(0),
    );
    let zig = |j: &str| {
        got.zigzags
            .as_ref()
            .and_then(|z| z.get(j).copied())
            .unwrap_or(0)
    };
    compare(&mut out, &pre("petrie"), expected.petrie, zig("1"));
    compare(&mut out, &pre("2-zigzag"), expected.zigzag2, zig("2"));
    compare(
        &mut out,
        &pre("f-vector"),
        expected.f_vector.map(|f| f.to_vec()),
        got.f_vector.clone(),
    );
    compare(&mut out, &pre("genus"), expected.genus.map(Some), got.genus);
    compare(
        &mut out,
        &pre("generated by involutions"),
        expected.generated_by_involutions,
        got.involutions
            .map(|i| i.group_gen_by_involutions)
            .unwrap_or(false),
    );
    out
}

/// Outcome of recomputing one catalog entry.
#[derive(Clone, Debug)]
pub struct Verification {
    pub name: &'static str,
    pub report: AnalysisReport,
    pub map_report: Option<AnalysisReport>,
    pub mismatches: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify_entry(entry: &CatalogEntry, cap: usize) -> Result<Verification, AnalysisError> {
    let p = entry.presentation(cap)?;
    let report = analyze(&p, cap)?;
    let mut problems = mismatches(&entry.expected, &report);
    let mut map_report = None;
    if let Some(expected_map) = &entry.expected.map {
        let pc = petrie_coxeter(&p, cap)?;
        problems.extend(map_mismatches(expected_map, &pc.report));
        map_report = Some(pc.report);
    }
    Ok(Verification {
        name: entry.name,
        report,
        map_report,
        mismatches: problems,
    })
}

/// Recomputes every catalog entry, one worker thread per entry.
pub fn verify_catalog(cap: usize) -> Vec<(&'static str, Result<Verification, AnalysisError>)> {
    let entries = catalog();
    std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| (e.name, s.spawn(move || verify_entry(e, cap))))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().expect("verification thread panicked")))
            .collect()
    })
}

fn fmt_map(map: &BTreeMap<String, usize>) -> String {
    if map.is_empty() {
        return "-".into();
    }
    let mut entries: Vec<(usize, usize)> = map
        .iter()
        .map(|(k, v)| (k.parse().unwrap_or(0), *v))
        .collect();
    entries.sort();
    entries
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_list(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl AnalysisReport {
    /// Two-column text rendering; the same numbers as the JSON form.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(&str, String)> = vec![
            ("group order", self.group_order.to_string()),
            ("schlafli", format!("{{{}}}", fmt_list(&self.schlafli))),
            ("polytopal", self.polytopal.to_string()),
            ("chirality", self.chirality.as_str().into()),
            ("self-duality", self.self_duality.as_str().into()),
        ];
        if let Some(p) = self.petrie {
            rows.push(("petrie", format!("left {} right {}", p.left, p.right)));
        }
        rows.push(("holes", fmt_map(&self.holes)));
        if let Some(z) = &self.zigzags {
            rows.push(("zigzags", fmt_map(z)));
        }
        rows.push(("f-vector", format!("({})", fmt_list(&self.f_vector))));
        if let Some(chi) = self.euler {
            rows.push(("euler", chi.to_string()));
        }
        if let Some(g) = self.genus {
            rows.push(("genus", g.to_string()));
        }
        if let Some(i) = self.involutions {
            rows.push(("N(τ) order", i.n_tau_order.to_string()));
            rows.push(("N(τ) index", i.n_tau_index.to_string()));
            rows.push((
                "gen. by involutions",
                i.group_gen_by_involutions.to_string(),
            ));
            rows.push(("involutions consistent", i.prop62_consistent.to_string()));
        }
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let pad = width - k.chars().count();
            let _ = writeln!(out, "{k}{}  {v}", " ".repeat(pad));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
