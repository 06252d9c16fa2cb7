//! Finite group models via Todd–Coxeter coset enumeration over the trivial
//! subgroup.
//!
//! The enumerator follows the Felsch strategy: a new coset is defined only at
//! the first undefined table entry (rows in index order, columns in letter
//! order), and every definition or deduction is immediately pushed through all
//! cyclic conjugates of the relators. Coincidences are resolved eagerly with a
//! union-find over coset numbers. Once the table closes it is renumbered in
//! breadth-first order from coset 0, so the numbering is canonical and the
//! Schreier representatives are shortlex-least words.
//!
//! A completed table over the trivial subgroup is the right regular action,
//! so coset `i` *is* the element represented by `schreier[i]`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::presentation::{Letter, Presentation, SubstitutionError, Word};

/// Default bound on the number of live cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(
        "coset enumeration exceeded the cap of {cap} cosets ({in_use} in use); \
         the group may be infinite or the cap too small"
    )]
    CapExceeded { cap: usize, in_use: usize },
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("expected {expected} image words, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}

/// A complete coset table: one row per coset, one column per letter
/// (`2g` for generator `g`, `2g + 1` for its inverse).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    columns: usize,
    entries: Vec<u32>,
}

impl CosetTable {
    pub fn rows(&self) -> usize {
        self.entries.len() / self.columns.max(1)
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    #[inline]
    pub fn get(&self, coset: usize, letter: Letter) -> usize {
        self.entries[coset * self.columns + letter.code()] as usize
    }

    pub fn row(&self, coset: usize) -> &[u32] {
        &self.entries[coset * self.columns..(coset + 1) * self.columns]
    }

    /// Right action of a word on a coset.
    pub fn act(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.get(c, l))
    }
}

/// Cyclic conjugates of the relators and their inverses, grouped by first letter.
fn relator_conjugates(relators: &[Word], columns: usize) -> Vec<Vec<Vec<u32>>> {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    for r in relators {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        for w in [r.clone(), r.inverse()] {
            let codes: Vec<u32> = w.letters().iter().map(|l| l.code() as u32).collect();
            for shift in 0..codes.len() {
                let mut c = codes[shift..].to_vec();
                c.extend_from_slice(&codes[..shift]);
                set.insert(c);
            }
        }
    }
    let mut by_first = vec![Vec::new(); columns];
    for c in set {
        by_first[c[0] as usize].push(c);
    }
    by_first
}

struct Enumerator {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    conjugates: Vec<Vec<Vec<u32>>>,
    relators: Vec<Vec<u32>>,
    deductions: Vec<(u32, u32)>,
    dead_queue: Vec<u32>,
    scan_from: usize,
}

impl Enumerator {
    fn new(p: &Presentation, cap: usize) -> Self {
        let columns = 2 * p.generator_count();
        let relators = p
            .relators()
            .iter()
            .map(|r| r.cyclically_reduced())
            .filter(|r| !r.is_empty())
            .map(|r| r.letters().iter().map(|l| l.code() as u32).collect())
            .collect();
        Enumerator {
            columns,
            table: vec![UNDEF; columns],
            parent: vec![0],
            live: 1,
            cap,
            conjugates: relator_conjugates(p.relators(), columns),
            relators,
            deductions: Vec::new(),
            dead_queue: Vec::new(),
            scan_from: 0,
        }
    }

    #[inline]
    fn entry(&self, coset: u32, col: u32) -> u32 {
        self.table[coset as usize * self.columns + col as usize]
    }

    #[inline]
    fn set(&mut self, coset: u32, col: u32, value: u32) {
        self.table[coset as usize * self.columns + col as usize] = value;
    }

    #[inline]
    fn alive(&self, coset: u32) -> bool {
        self.parent[coset as usize] == coset
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut root = k;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = k;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn define(&mut self, coset: u32, col: u32) -> Result<(), EngineError> {
        if self.live >= self.cap || self.rows() >= self.cap.saturating_mul(8) {
            return Err(EngineError::CapExceeded {
                cap: self.cap,
                in_use: self.live,
            });
        }
        let new = self.rows() as u32;
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(UNDEF, self.columns));
        self.live += 1;
        self.set(coset, col, new);
        self.set(new, col ^ 1, coset);
        self.deductions.push((coset, col));
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.dead_queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.dead_queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.dead_queue.len() {
            let gamma = self.dead_queue[i];
            i += 1;
            for col in 0..self.columns as u32 {
                let delta = self.entry(gamma, col);
                if delta == UNDEF {
                    continue;
                }
                if self.entry(delta, col ^ 1) == gamma {
                    self.set(delta, col ^ 1, UNDEF);
                    self.scan_from = self.scan_from.min(delta as usize);
                }
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_x = self.entry(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.entry(nu, col ^ 1);
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                        self.deductions.push((mu, col));
                    }
                }
            }
        }
    }

    /// Scans `word` (column codes) at `coset` without defining new cosets;
    /// records a deduction when exactly one entry is missing.
    fn scan(&mut self, coset: u32, word_ix: (usize, usize)) {
        let n = self.conjugates[word_ix.0][word_ix.1].len();
        let mut f = coset;
        let mut i = 0;
        while i < n {
            let t = self.entry(f, self.conjugates[word_ix.0][word_ix.1][i]);
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == n {
            if f != coset {
                self.coincidence(f, coset);
            }
            return;
        }
        let mut b = coset;
        let mut j = n;
        while j > i {
            let t = self.entry(b, self.conjugates[word_ix.0][word_ix.1][j - 1] ^ 1);
            if t == UNDEF {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            let col = self.conjugates[word_ix.0][word_ix.1][i];
            self.set(f, col, b);
            self.set(b, col ^ 1, f);
            self.deductions.push((f, col));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((coset, col)) = self.deductions.pop() {
            if !self.alive(coset) {
                continue;
            }
            for k in 0..self.conjugates[col as usize].len() {
                self.scan(coset, (col as usize, k));
                if !self.alive(coset) {
                    break;
                }
            }
        }
    }

    fn first_gap(&mut self) -> Option<(u32, u32)> {
        while self.scan_from < self.rows() {
            let c = self.scan_from as u32;
            if self.alive(c) {
                for col in 0..self.columns as u32 {
                    if self.entry(c, col) == UNDEF {
                        return Some((c, col));
                    }
                }
            }
            self.scan_from += 1;
        }
        None
    }

    /// Checks every relator at every live coset of a complete table, merging
    /// any cosets that disagree. Returns whether anything changed.
    fn close_relators(&mut self) -> bool {
        let mut changed = false;
        for c in 0..self.rows() as u32 {
            if !self.alive(c) {
                continue;
            }
            for r in 0..self.relators.len() {
                let mut f = c;
                for k in 0..self.relators[r].len() {
                    f = self.entry(f, self.relators[r][k]);
                    if f == UNDEF {
                        break;
                    }
                }
                if f == UNDEF {
                    changed = true;
                } else if f != c {
                    self.coincidence(f, c);
                    self.process_deductions();
                    changed = true;
                }
                if !self.alive(c) {
                    break;
                }
            }
        }
        changed
    }

    fn run(mut self) -> Result<(CosetTable, Vec<Word>), EngineError> {
        loop {
            self.process_deductions();
            match self.first_gap() {
                Some((c, col)) => self.define(c, col)?,
                None => {
                    if !self.close_relators() {
                        break;
                    }
                    self.scan_from = 0;
                }
            }
        }
        Ok(self.standardize())
    }

    /// Breadth-first renumbering from coset 0 in letter order.
    fn standardize(&self) -> (CosetTable, Vec<Word>) {
        let mut new_index = vec![UNDEF; self.rows()];
        let mut order: Vec<u32> = vec![0];
        let mut words: Vec<Word> = vec![Word::identity()];
        new_index[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for col in 0..self.columns as u32 {
                let t = self.entry(c, col);
                if new_index[t as usize] == UNDEF {
                    new_index[t as usize] = order.len() as u32;
                    order.push(t);
                    let mut w = words[i].letters().to_vec();
                    w.push(Letter::from_code(col as usize));
                    words.push(Word::from_letters(w));
                }
            }
            i += 1;
        }
        let mut entries = Vec::with_capacity(order.len() * self.columns);
        for &c in &order {
            for col in 0..self.columns as u32 {
                entries.push(new_index[self.entry(c, col) as usize]);
            }
        }
        (
            CosetTable {
                columns: self.columns,
                entries,
            },
            words,
        )
    }
}

/// Index of a group element (a coset of the trivial subgroup).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementIndex(pub u32);

impl ElementIndex {
    pub const IDENTITY: ElementIndex = ElementIndex(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subgroup stored as its full element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<bool>,
    elements: Vec<ElementIndex>,
    generators: Vec<Word>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: ElementIndex) -> bool {
        self.members[x.index()]
    }

    pub fn elements(&self) -> &[ElementIndex] {
        &self.elements
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Index of this subgroup in an overgroup of the given order.
    pub fn index_in(&self, order: usize) -> usize {
        order / self.order()
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.elements.iter().filter(|&&x| other.contains(x)).count()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Whether `self ∩ other` equals `expected` as a set.
    pub fn intersection_equals(&self, other: &Subgroup, expected: &Subgroup) -> bool {
        expected.is_subset_of(self)
            && expected.is_subset_of(other)
            && self.intersection_order(other) == expected.order()
    }
}

/// A finite group given by a presentation and its regular coset table.
#[derive(Clone, Debug)]
pub struct GroupRep {
    presentation: Presentation,
    table: CosetTable,
    schreier: Vec<Word>,
}

/// Runs coset enumeration over the trivial subgroup.
pub fn enumerate(p: &Presentation, cap: usize) -> Result<GroupRep, EngineError> {
    if p.generator_count() == 0 {
        return Err(EngineError::NoGenerators);
    }
    let (table, schreier) = Enumerator::new(p, cap).run()?;
    Ok(GroupRep {
        presentation: p.clone(),
        table,
        schreier,
    })
}

impl GroupRep {
    pub fn order(&self) -> usize {
        self.schreier.len()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn generator_words(&self) -> Vec<Word> {
        (0..self.presentation.generator_count())
            .map(Word::generator)
            .collect()
    }

    pub fn element_of(&self, w: &Word) -> ElementIndex {
        self.multiply(ElementIndex::IDENTITY, w)
    }

    /// Right action of `w` on element `x`, i.e. the product `x · w`.
    pub fn multiply(&self, x: ElementIndex, w: &Word) -> ElementIndex {
        ElementIndex(self.table.act(x.index(), w) as u32)
    }

    pub fn product(&self, x: ElementIndex, y: ElementIndex) -> ElementIndex {
        self.multiply(x, &self.schreier[y.index()])
    }

    pub fn inverse(&self, x: ElementIndex) -> ElementIndex {
        self.element_of(&self.schreier[x.index()].inverse())
    }

    /// Shortlex-least representative word of an element.
    pub fn element_word(&self, x: ElementIndex) -> &Word {
        &self.schreier[x.index()]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementIndex> {
        (0..self.order() as u32).map(ElementIndex)
    }

    pub fn order_of(&self, x: ElementIndex) -> usize {
        let w = &self.schreier[x.index()];
        let mut y = x;
        let mut k = 1;
        while y != ElementIndex::IDENTITY {
            y = self.multiply(y, w);
            k += 1;
        }
        k
    }

    /// Least `k ≥ 1` with `w^k` trivial.
    pub fn element_order(&self, w: &Word) -> usize {
        self.order_of(self.element_of(w))
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.element_of(u) == self.element_of(v)
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.element_of(w) == ElementIndex::IDENTITY
    }

    /// Every relator fixes every coset.
    pub fn relators_hold(&self) -> bool {
        self.presentation
            .relators()
            .iter()
            .all(|r| (0..self.order()).all(|c| self.table.act(c, r) == c))
    }

    /// Subgroup generated by the given words (breadth-first closure).
    pub fn subgroup_closure(&self, gens: &[Word]) -> Subgroup {
        let mut steps: Vec<Word> = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            let g = g.reduced();
            if !g.is_empty() {
                steps.push(g.inverse());
                steps.push(g);
            }
        }
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut elements = vec![ElementIndex::IDENTITY];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for s in &steps {
                let y = self.multiply(x, s);
                if !members[y.index()] {
                    members[y.index()] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        Subgroup {
            members,
            elements,
            generators: gens.to_vec(),
        }
    }

    pub fn whole_group(&self) -> Subgroup {
        self.subgroup_closure(&self.generator_words())
    }

    /// Smallest subgroup containing `words` that is normalized by `conjugators`.
    pub fn normal_closure_within(&self, words: &[Word], conjugators: &[Word]) -> Subgroup {
        let mut gens: Vec<Word> = words.iter().map(|w| w.reduced()).collect();
        let mut sub = self.subgroup_closure(&gens);
        let mut i = 0;
        while i < gens.len() {
            for g in conjugators {
                let c = self.element_of(&product3(&g.inverse(), &gens[i], g));
                if !sub.contains(c) {
                    gens.push(self.schreier[c.index()].clone());
                    sub = self.subgroup_closure(&gens);
                }
            }
            i += 1;
        }
        sub.generators = gens;
        sub
    }

    /// Normal closure of `w` in the whole group.
    pub fn normal_closure(&self, w: &Word) -> Subgroup {
        self.normal_closure_within(std::slice::from_ref(w), &self.generator_words())
    }

    /// Checks that `images[g]` defines an automorphism: relators map to the
    /// identity and the images generate the whole group.
    pub fn extends_to_automorphism(&self, images: &[Word]) -> Result<bool, EngineError> {
        let n = self.presentation.generator_count();
        if images.len() != n {
            return Err(EngineError::ImageCountMismatch {
                expected: n,
                got: images.len(),
            });
        }
        for r in self.presentation.relators() {
            if !self.is_identity(&r.substitute(images)?) {
                return Ok(false);
            }
        }
        Ok(self.subgroup_closure(images).order() == self.order())
    }

    /// Whether `domain[i] ↦ images[i]` extends to an automorphism of the
    /// subgroup generated by `domain`.
    ///
    /// Works element by element: the subgroup generated by the pairs
    /// `(domain[i], images[i])` of `G × G` must be the graph of a map, the
    /// images must lie in `⟨domain⟩`, and they must generate it.
    pub fn extends_to_isomorphism_on(&self, domain: &[Word], images: &[Word]) -> bool {
        if domain.len() != images.len() {
            return false;
        }
        let h = self.subgroup_closure(domain);
        if !images.iter().all(|w| h.contains(self.element_of(w))) {
            return false;
        }
        let mut graph = vec![UNDEF; self.order()];
        graph[0] = 0;
        let mut queue = vec![ElementIndex::IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let y = ElementIndex(graph[x.index()]);
            for (d, im) in domain.iter().zip(images) {
                let x2 = self.multiply(x, d);
                let y2 = self.multiply(y, im);
                match graph[x2.index()] {
                    UNDEF => {
                        graph[x2.index()] = y2.0;
                        queue.push(x2);
                    }
                    prev if prev != y2.0 => return false,
                    _ => {}
                }
            }
            i += 1;
        }
        self.subgroup_closure(images).order() == h.order()
    }

    /// Non-identity elements of order 2 inside `within`.
    pub fn involutions_in(&self, within: &Subgroup) -> Vec<ElementIndex> {
        within
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                x != ElementIndex::IDENTITY && self.product(x, x) == ElementIndex::IDENTITY
            })
            .collect()
    }

    /// Whether the involutions of `within` generate it.
    pub fn involutions_generate(&self, within: &Subgroup) -> bool {
        let mut gens: Vec<Word> = Vec::new();
        let mut sub = self.subgroup_closure(&gens);
        for x in self.involutions_in(within) {
            if sub.order() == within.order() {
                break;
            }
            if !sub.contains(x) {
                gens.push(self.schreier[x.index()].clone());
                sub = self.subgroup_closure(&gens);
            }
        }
        sub.order() == within.order()
    }

    pub fn generated_by_involutions(&self) -> bool {
        self.involutions_generate(&self.whole_group())
    }

    /// Elements of `within` commuting with every word in `gens`.
    pub fn centralizer_in(&self, within: &Subgroup, gens: &[Word]) -> Subgroup {
        let gen_elems: Vec<ElementIndex> = gens.iter().map(|g| self.element_of(g)).collect();
        let central: Vec<ElementIndex> = within
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                gens.iter()
                    .zip(&gen_elems)
                    .all(|(g, &ge)| self.multiply(x, g) == self.product(ge, x))
            })
            .collect();
        let words: Vec<Word> = central
            .iter()
            .filter(|&&x| x != ElementIndex::IDENTITY)
            .map(|&x| self.schreier[x.index()].clone())
            .collect();
        let mut members = vec![false; self.order()];
        for &x in &central {
            members[x.index()] = true;
        }
        let mut elements = central;
        elements.sort();
        Subgroup {
            members,
            elements,
            generators: words,
        }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_in(&self.whole_group(), &self.generator_words())
    }

    /// Commutator subgroup of `⟨gens⟩`.
    pub fn derived_subgroup_of(&self, gens: &[Word]) -> Subgroup {
        let mut commutators = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                commutators.push(product3(&a.inverse(), &b.inverse(), &(a * b)));
            }
        }
        self.normal_closure_within(&commutators, gens)
    }
}

fn product3(a: &Word, b: &Word, c: &Word) -> Word {
    a.concat(b).concat(c)
}
