//! End-to-end acceptance criteria at exact integers.
//!
//! A custom harness: each criterion runs on its own thread and gathers every
//! violated check; `main` prints one `PASS`/`FAIL` line per criterion, in
//! order, and exits non-zero if any failed.
//!
//! ```text
//! cargo test -p rotamap-core --test acceptance
//! ```

use rotamap::constructions::{
    catalog, central_quotient, lattice_torus_oracle, locally_toroidal, pc_map_improper,
    pc_map_proper, pc_map_regular, petrie_quotient, simplex_c_group, torus_map, CatalogEntry,
    LocallyToroidalSpec, TorusFamily, TorusKind,
};
use rotamap::engine::{enumerate, DEFAULT_MAX_COSETS};
use rotamap::presentation::{product, Word};
use rotamap::report::analyze;
use rotamap::rotary::{Chirality, RegularMap3, RotationGroup3, RotationGroup4};
use rotamap::selfdual::{
    detect_self_duality, extend_improper, extend_polarity, extend_proper, find_polarity,
    ExtendedGroup, SelfDualityKind,
};

const CAP: usize = DEFAULT_MAX_COSETS;

/// Collects violations for one criterion.
struct Checks {
    label: &'static str,
    failures: Vec<String>,
    count: usize,
}

impl Checks {
    fn new(label: &'static str) -> Self {
        Checks {
            label,
            failures: Vec::new(),
            count: 0,
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl Into<String>, got: T, want: T) {
        self.count += 1;
        if got != want {
            self.failures
                .push(format!("{}: got {got:?}, want {want:?}", what.into()));
        }
    }

    fn ok(&mut self, what: impl Into<String>, cond: bool) {
        self.eq(what, cond, true);
    }

    /// The criterion's report line; `Err` when any check was violated.
    fn finish(self) -> Result<String, String> {
        if self.failures.is_empty() {
            Ok(format!("{}: PASS ({} checks)", self.label, self.count))
        } else {
            Err(format!(
                "{}: FAIL ({} of {} checks) — {}",
                self.label,
                self.failures.len(),
                self.count,
                self.failures.join("; ")
            ))
        }
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fam(kind: TorusKind, b: u32, c: u32) -> TorusFamily {
    TorusFamily::new(kind, b, c).unwrap()
}

fn ex1() -> LocallyToroidalSpec {
    LocallyToroidalSpec::new(fam(TorusKind::Square, 1, 3), fam(TorusKind::Square, 1, 3)).unwrap()
}

fn ex2() -> LocallyToroidalSpec {
    LocallyToroidalSpec::new(
        fam(TorusKind::Hexagonal, 1, 2),
        fam(TorusKind::Triangular, 2, 1),
    )
    .unwrap()
}

fn ex3() -> LocallyToroidalSpec {
    LocallyToroidalSpec::new(
        fam(TorusKind::Triangular, 1, 2),
        fam(TorusKind::Hexagonal, 1, 2),
    )
    .unwrap()
}

fn map_generated_by_involutions(m: &RotationGroup3) -> bool {
    m.rep().involutions_generate(&m.closure())
}

fn criterion_1_example_one_pipeline() -> Outcome {
    let mut c = Checks::new("criterion 1 (ex1 pipeline)");
    let g = locally_toroidal(&ex1(), CAP).unwrap();
    c.eq("base order", g.order(), 2000);
    c.eq("base type", g.schlafli(), [4, 4, 4]);
    c.eq("base chirality", g.classify(), Chirality::Chiral);
    c.eq(
        "self-duality",
        detect_self_duality(&g).unwrap().kind,
        SelfDualityKind::Improper,
    );
    let e = extend_improper(&g, CAP).unwrap();
    c.eq("extended order", e.order(), 4000);
    let m = pc_map_improper(&e).unwrap();
    c.eq("map group order", m.order(), 4000);
    c.eq("map type", m.schlafli(), [4, 8]);
    c.eq("2-hole", m.hole_length(2).unwrap(), 4);
    c.eq("map chirality", m.classify(), Chirality::Chiral);
    c.ok(
        "map group not generated by involutions",
        !map_generated_by_involutions(&m),
    );
    c.eq(
        "map f-vector",
        m.f_vector().unwrap().as_array(),
        [500, 2000, 1000],
    );
    c.eq("map genus", m.euler_genus().unwrap(), (-500, 251));
    c.finish()
}

fn criterion_2_example_two_pipeline() -> Outcome {
    let mut c = Checks::new("criterion 2 (ex2 pipeline)");
    let g = locally_toroidal(&ex2(), CAP).unwrap();
    c.eq("base order", g.order(), 20160);
    c.eq("base type", g.schlafli(), [6, 3, 6]);
    c.eq("petrie", g.petrie(), (28, 28));
    let q14 = petrie_quotient(&g, 14, CAP).unwrap();
    let q7 = petrie_quotient(&g, 7, CAP).unwrap();
    c.eq("k=14 order", q14.order(), 10080);
    c.eq("k=7 order", q7.order(), 5040);
    c.eq("k=14 petrie", q14.petrie(), (14, 14));
    c.eq("k=7 petrie", q7.petrie(), (7, 7));
    c.eq("k=7 centre", q7.rep().center().order(), 1);
    let derived = q7.rep().derived_subgroup_of(q7.sigma());
    c.eq("k=7 derived index", q7.order() / derived.order(), 2);
    for (name, base) in [("base", &g), ("k=14", &q14), ("k=7", &q7)] {
        c.eq(format!("{name} polytopal"), base.check_polytopal(), true);
        c.eq(
            format!("{name} chirality"),
            base.classify(),
            Chirality::Chiral,
        );
        c.eq(
            format!("{name} self-duality"),
            detect_self_duality(base).unwrap().kind,
            SelfDualityKind::Improper,
        );
        let e = extend_improper(base, CAP).unwrap();
        c.eq(
            format!("{name} extended order"),
            e.order(),
            2 * base.order(),
        );
        let m = pc_map_improper(&e).unwrap();
        c.eq(format!("{name} map order"), m.order(), 2 * base.order());
        c.eq(format!("{name} map type"), m.schlafli(), [4, 6]);
        c.eq(format!("{name} 2-hole"), m.hole_length(2).unwrap(), 6);
        c.ok(
            format!("{name} map generated by involutions"),
            map_generated_by_involutions(&m),
        );
    }
    c.finish()
}

fn criterion_3_example_three_pipeline() -> Outcome {
    let mut c = Checks::new("criterion 3 (ex3 pipeline)");
    let g = locally_toroidal(&ex3(), CAP).unwrap();
    c.eq("base order", g.order(), 672);
    c.eq("base type", g.schlafli(), [3, 6, 3]);
    c.eq(
        "self-duality",
        detect_self_duality(&g).unwrap().kind,
        SelfDualityKind::Proper,
    );
    let e = extend_proper(&g, CAP).unwrap();
    let m = pc_map_proper(&e).unwrap();
    let inv = m.invariants().unwrap();
    c.eq("map chirality", inv.chirality, Chirality::Regular);
    c.eq("map type", inv.schlafli, [3, 16]);
    c.eq("map petrie", m.zigzag_length(1), 28);
    c.eq("map 2-zigzag", m.zigzag_length(2), 6);
    c.eq("map f-vector", inv.f_vector.as_array(), [42, 336, 224]);
    c.eq("map group order", m.order(), 1344);

    let centre = g.rep().center();
    c.eq("centre order", centre.order(), 2);
    let cq = central_quotient(&g, CAP).unwrap();
    c.eq("central quotient order", cq.order(), 336);
    let ecq = extend_proper(&cq, CAP).unwrap();
    let mq = pc_map_proper(&ecq).unwrap();
    let invq = mq.invariants().unwrap();
    c.eq("quotient map type", invq.schlafli, [3, 8]);
    c.eq(
        "quotient map f-vector",
        invq.f_vector.as_array(),
        [42, 168, 112],
    );
    c.eq("quotient map group order", mq.order(), 672);
    c.eq("quotient map petrie", mq.zigzag_length(1), 14);
    c.finish()
}

fn criterion_4_regular_path() -> Outcome {
    let mut c = Checks::new("criterion 4 (regular path, {3,3,3})");
    let cg = simplex_c_group(CAP).unwrap();
    c.eq("C-group order", cg.order(), 120);
    c.eq(
        "polarity",
        find_polarity(&cg).kind,
        SelfDualityKind::RegularPolarity,
    );
    let e = extend_polarity(&cg, CAP).unwrap();
    c.eq("extended order", e.order(), 240);
    let m = pc_map_regular(&e).unwrap();
    let inv = m.invariants().unwrap();
    c.eq("map type", inv.schlafli, [4, 6]);
    c.eq("2-hole", m.hole_length(2).unwrap(), 3);
    c.eq("map group order", m.order(), 240);
    c.eq("f-vector", inv.f_vector.as_array(), [20, 60, 30]);
    c.eq("genus", inv.genus, Some(6));
    // coset-index oracle: vertices, edges and faces are cosets of the
    // dihedral stabilizers in the order-240 group
    let [r0, r1, r2] = m.rho().clone();
    let g = m.rep();
    let size = |a: &Word, b: &Word| g.subgroup_closure(&[a.clone(), b.clone()]).order();
    c.eq(
        "coset oracle",
        [
            240 / size(&r1, &r2),
            240 / size(&r0, &r2),
            240 / size(&r0, &r1),
        ],
        [20, 60, 30],
    );
    c.finish()
}

fn criterion_5_torus_family() -> Outcome {
    let mut c = Checks::new("criterion 5 (torus family)");
    for kind in [
        TorusKind::Square,
        TorusKind::Triangular,
        TorusKind::Hexagonal,
    ] {
        for b in 1..=4u32 {
            for cc in 0..=4u32 {
                let t = fam(kind, b, cc);
                let m = torus_map(&t, CAP).unwrap();
                let oracle = lattice_torus_oracle(&t);
                let (bi, ci) = (b as usize, cc as usize);
                let formula = match kind {
                    TorusKind::Square => 4 * (bi * bi + ci * ci),
                    _ => 6 * (bi * bi + bi * ci + ci * ci),
                };
                c.eq(format!("{t} order vs oracle"), m.order(), oracle.order);
                c.eq(format!("{t} oracle vs formula"), oracle.order, formula);
                // non-polytopal maps have no chirality class; their
                // reflexibility is checked at the map level
                let regular = if m.check_polytopal() {
                    m.classify() == Chirality::Regular
                } else {
                    m.is_reflexible()
                };
                c.eq(format!("{t} regular"), regular, cc == 0 || b == cc);
                c.eq(
                    format!("{t} lattice reflexibility"),
                    oracle.reflexible,
                    cc == 0 || b == cc,
                );
                if m.check_polytopal() {
                    c.eq(
                        format!("{t} f-vector vs oracle"),
                        m.f_vector().unwrap().as_array(),
                        [oracle.vertices, oracle.edges, oracle.faces],
                    );
                }
            }
        }
    }
    let degenerate = torus_map(&fam(TorusKind::Square, 1, 0), CAP).unwrap();
    c.eq(
        "{4,4}_(1,0) f-vector",
        degenerate.f_vector_diagnostic().as_array(),
        [1, 2, 1],
    );
    c.eq("{4,4}_(1,0) polytopal", degenerate.check_polytopal(), false);
    c.finish()
}

fn base_of(entry: &CatalogEntry) -> Option<RotationGroup4> {
    let p = entry.presentation(CAP).unwrap();
    match p.distinguished() {
        Some(d)
            if d.words.len() == 3 && d.kind == rotamap::presentation::DistinguishedKind::Sigma =>
        {
            Some(RotationGroup4::from_presentation(&p, CAP).unwrap())
        }
        _ => None,
    }
}

fn improper_properties(c: &mut Checks, name: &str, g: &RotationGroup4, e: &ExtendedGroup) {
    let r = e.rep();
    let [s1, s2, s3] = g.sigma().clone();
    let d = e.duality().clone();
    let k1 = d.clone();
    let k2 = product([&s1, &s2, &d.inverse()]);
    let [p, q, _] = g.schlafli();
    c.eq(format!("{name} order κ1"), r.element_order(&k1), 4);
    c.eq(format!("{name} order κ2"), r.element_order(&k2), 2 * q);
    c.eq(
        format!("{name} order κ1κ2"),
        r.element_order(&(&k1 * &k2)),
        2,
    );
    c.eq(
        format!("{name} order κ1κ2⁻¹"),
        r.element_order(&(&k1 * &k2.inverse())),
        p,
    );
    c.ok(
        format!("{name} κ2² = σ2⁻¹"),
        r.equal(&k2.pow(2), &s2.inverse()),
    );
    let conj = |w: &Word| product([&d.inverse(), w, &d]);
    let cycle = [
        &s1 * &s2,
        product([&s1, &s2, &s3, &s1.inverse()]),
        product([&s3.inverse(), &s1, &s2, &s3]),
        &s2 * &s3,
    ];
    for i in 0..4 {
        c.ok(
            format!("{name} δ-cycle step {i}"),
            r.equal(&conj(&cycle[i]), &cycle[(i + 1) % 4]),
        );
    }
    let (l, rr) = g.petrie();
    c.eq(format!("{name} π_L vs π_R"), l, rr);
}

fn proper_properties(c: &mut Checks, name: &str, g: &RotationGroup4, m: &RegularMap3) {
    let r = m.rep();
    let [t0, t1, t2] = m.rho().clone();
    let (l, rr) = g.petrie();
    let q = g.schlafli()[1];
    c.eq(
        format!("{name} order τ1τ2"),
        r.element_order(&(&t1 * &t2)),
        2 * l,
    );
    c.eq(
        format!("{name} order τ0τ1τ2"),
        r.element_order(&product([&t0, &t1, &t2])),
        2 * rr,
    );
    c.eq(
        format!("{name} order τ0(τ1τ2)²"),
        r.element_order(&(&t0 * &(&t1 * &t2).pow(2))),
        q,
    );
    c.ok(
        format!("{name} τ0τ2 = τ2τ0"),
        r.equal(&(&t0 * &t2), &(&t2 * &t0)),
    );
}

fn criterion_6_theorems_as_properties() -> Outcome {
    let mut c = Checks::new("criterion 6 (theorems as properties)");
    for entry in catalog() {
        let p = entry.presentation(CAP).unwrap();
        let report = analyze(&p, CAP).unwrap();
        if let Some(i) = report.involutions {
            c.ok(
                format!("{} involution consistency", entry.name),
                i.prop62_consistent,
            );
            c.eq(
                format!("{} N(τ) index·order", entry.name),
                i.n_tau_index * i.n_tau_order,
                report.group_order,
            );
        }
        let Some(g) = base_of(&entry) else { continue };
        match detect_self_duality(&g).unwrap().kind {
            SelfDualityKind::Improper if g.classify() == Chirality::Chiral => {
                let e = extend_improper(&g, CAP).unwrap();
                improper_properties(&mut c, entry.name, &g, &e);
                let m = pc_map_improper(&e).unwrap();
                c.ok(
                    format!("{} map involution consistency", entry.name),
                    m.involution_report().prop62_consistent,
                );
            }
            SelfDualityKind::Proper => {
                let e = extend_proper(&g, CAP).unwrap();
                let m = pc_map_proper(&e).unwrap();
                proper_properties(&mut c, entry.name, &g, &m);
                c.ok(
                    format!("{} map involution consistency", entry.name),
                    m.rotations().involution_report().prop62_consistent,
                );
            }
            _ => {}
        }
    }
    c.finish()
}

fn criterion_7_engine_determinism_and_soundness() -> Outcome {
    let mut c = Checks::new("criterion 7 (engine determinism and soundness)");
    for entry in catalog() {
        let p = entry.presentation(CAP).unwrap();
        let a = enumerate(&p, CAP).unwrap();
        let b = enumerate(&p, CAP).unwrap();
        c.ok(
            format!("{} identical tables", entry.name),
            a.table() == b.table(),
        );
        c.ok(
            format!("{} relators fix every coset", entry.name),
            a.relators_hold(),
        );
        let words = &p.distinguished().unwrap().words;
        for i in 0..words.len() {
            for j in i..words.len() {
                let h = a.subgroup_closure(&[words[i].clone(), words[j].clone()]);
                c.eq(
                    format!("{} Lagrange ⟨w{i}, w{j}⟩", entry.name),
                    a.order() % h.order(),
                    0,
                );
            }
        }
    }
    let base = ex2().presentation();
    let s1s3 = Word::from_signed(&[1, 3]);
    let orders: Vec<usize> = [None, Some(14), Some(7)]
        .iter()
        .map(|k| {
            let p = match k {
                None => base.clone(),
                Some(k) => base.with_relators([s1s3.pow(*k)]),
            };
            enumerate(&p, CAP).unwrap().order()
        })
        .collect();
    c.eq("quotient chain", orders.clone(), vec![20160, 10080, 5040]);
    c.ok(
        "quotient chain monotone",
        orders.windows(2).all(|w| w[1] <= w[0]),
    );
    // the k=7 relator added on top of k=14 gives the same group as k=7 alone
    let both = base.with_relators([s1s3.pow(14), s1s3.pow(7)]);
    c.eq(
        "chained quotient",
        enumerate(&both, CAP).unwrap().order(),
        5040,
    );
    c.finish()
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("criterion 1", criterion_1_example_one_pipeline),
        ("criterion 2", criterion_2_example_two_pipeline),
        ("criterion 3", criterion_3_example_three_pipeline),
        ("criterion 4", criterion_4_regular_path),
        ("criterion 5", criterion_5_torus_family),
        ("criterion 6", criterion_6_theorems_as_properties),
        ("criterion 7", criterion_7_engine_determinism_and_soundness),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(label, run)| (label, s.spawn(run)))
            .collect();
        handles
            .into_iter()
            .map(|(label, h)| {
                h.join()
                    .unwrap_or_else(|_| Err(format!("{label}: FAIL — panicked")))
            })
            .collect()
    });
    let mut failed = 0;
    for outcome in &outcomes {
        match outcome {
            Ok(line) => println!("{line}"),
            Err(line) => {
                failed += 1;
                println!("{line}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
