//! Filtered algebras presented by weighted rewrite systems, and their Rees
//! algebras `⊕_n A_{≤n} tⁿ`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{display_rat, Rat};

pub type Word = Vec<usize>;

/// Linear combination of words.
pub type Expr = BTreeMap<Word, Rat>;

/// A rewrite rule `lhs → Σ c·w`, read as the relation `lhs = Σ c·w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<(Rat, Word)>,
}

/// Generators with positive weights and a rewrite system of relations. With
/// `commutative` set, the rules `ba → ab` for `a < b` are added implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredPresentation {
    pub generators: Vec<String>,
    pub weights: Vec<u32>,
    pub commutative: bool,
    /// A generator declared central, ordered below all others of equal weight.
    pub central: Option<usize>,
    pub rules: Vec<Rule>,
    pub bound: u32,
}

/// A filtered presentation extended by a central weight-one generator `t`
/// (the last generator) with every relation made weight-homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesPresentation {
    pub source: FilteredPresentation,
    pub graded: FilteredPresentation,
    pub t: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Results of checking the Rees identities on all words up to the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesReport {
    pub words_checked: usize,
    pub source_confluent: bool,
    pub rees_confluent: bool,
    pub t_central: bool,
    pub specializes_to_source: bool,
    pub gr_matches_quotient: bool,
    pub gr_commutative: bool,
}

impl ReesReport {
    pub fn passed(&self) -> bool {
        self.source_confluent
            && self.rees_confluent
            && self.t_central
            && self.specializes_to_source
            && self.gr_matches_quotient
    }
}

impl FilteredPresentation {
    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn word_weight(&self, w: &[usize]) -> u32 {
        w.iter().map(|&a| self.weights[a]).sum()
    }

    /// All rules, including implicit commutation rules.
    pub fn all_rules(&self) -> Vec<Rule> {
        let mut rules = self.rules.clone();
        if self.commutative {
            for a in 0..self.ngens() {
                for b in a + 1..self.ngens() {
                    rules.push(Rule {
                        lhs: vec![b, a],
                        rhs: vec![(Rat::one(), vec![a, b])],
                    });
                }
            }
        }
        rules
    }

    /// Checks weights, balance and that every rule decreases the word order.
    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.ngens() {
            return Err(Error::InvalidData("one weight per generator required".into()));
        }
        if self.weights.contains(&0) {
            return Err(Error::InvalidData("weights must be positive".into()));
        }
        for (idx, rule) in self.rules.iter().enumerate() {
            let words = std::iter::once(&rule.lhs).chain(rule.rhs.iter().map(|(_, w)| w));
            if words.flatten().any(|&a| a >= self.ngens()) {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    nvars: self.ngens(),
                });
            }
            let w = self.word_weight(&rule.lhs);
            if rule.rhs.iter().any(|(_, r)| self.word_weight(r) > w) {
                return Err(Error::UnbalancedRelation(idx));
            }
            if rule.lhs.is_empty()
                || rule
                    .rhs
                    .iter()
                    .any(|(_, r)| self.word_cmp(r, &rule.lhs) != Ordering::Less)
            {
                return Err(Error::NonDecreasingRule(idx));
            }
        }
        Ok(())
    }

    /// Word order used for termination: total weight, then the number of
    /// non-central letters, then the number of letters with weight above one,
    /// then length, then lexicographic.
    pub fn word_cmp(&self, a: &[usize], b: &[usize]) -> Ordering {
        let heavy = |w: &[usize]| w.iter().filter(|&&x| self.weights[x] > 1).count();
        let plain = |w: &[usize]| w.iter().filter(|&&x| Some(x) != self.central).count();
        self.word_weight(a)
            .cmp(&self.word_weight(b))
            .then_with(|| plain(a).cmp(&plain(b)))
            .then_with(|| heavy(a).cmp(&heavy(b)))
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| a.cmp(b))
    }

    pub fn normal_form(&self, expr: &Expr, strategy: Strategy) -> Expr {
        normal_form_with(&self.all_rules(), expr, strategy)
    }

    pub fn word_normal_form(&self, w: &[usize]) -> Expr {
        self.normal_form(&single(w), Strategy::Leftmost)
    }

    /// Resolves every overlap and inclusion between rule left-hand sides whose
    /// combined word has weight at most the bound. Returns the first failing
    /// word, if any.
    pub fn critical_pair_failure(&self) -> Option<Word> {
        let rules = self.all_rules();
        for r1 in &rules {
            for r2 in &rules {
                for word in overlaps(&r1.lhs, &r2.lhs) {
                    if self.word_weight(&word) > self.bound {
                        continue;
                    }
                    let reductions = one_step_reductions(&rules, &word);
                    let mut nfs = reductions
                        .iter()
                        .map(|e| normal_form_with(&rules, e, Strategy::Leftmost));
                    if let Some(first) = nfs.next() {
                        if nfs.any(|nf| nf != first) {
                            return Some(word);
                        }
                    }
                }
            }
        }
        None
    }

    /// All words over the generators of weight at most `bound`.
    pub fn words_up_to(&self, bound: u32) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![(Vec::new(), 0u32)];
        while let Some((w, wt)) = frontier.pop() {
            for a in 0..self.ngens() {
                let nw = wt + self.weights[a];
                if nw <= bound {
                    let mut next = w.clone();
                    next.push(a);
                    out.push(next.clone());
                    frontier.push((next, nw));
                }
            }
        }
        out.sort_by(|a, b| self.word_cmp(a, b));
        out
    }

    pub fn format_expr(&self, e: &Expr) -> String {
        if e.is_empty() {
            return "0".into();
        }
        e.iter()
            .rev()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|&a| self.generators[a].as_str())
                        .collect::<Vec<_>>()
                        .join("")
                };
                if c.is_one() {
                    word
                } else {
                    format!("{}*{word}", display_rat(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn single(w: &[usize]) -> Expr {
    let mut e = Expr::new();
    e.insert(w.to_vec(), Rat::one());
    e
}

fn add_into(e: &mut Expr, w: Word, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = e.entry(w.clone()).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        e.remove(&w);
    }
}

fn find_occurrence(rules: &[Rule], w: &[usize], strategy: Strategy) -> Option<(usize, usize)> {
    let positions: Box<dyn Iterator<Item = usize>> = match strategy {
        Strategy::Leftmost => Box::new(0..w.len()),
        Strategy::Rightmost => Box::new((0..w.len()).rev()),
    };
    for pos in positions {
        for (ri, r) in rules.iter().enumerate() {
            if w[pos..].starts_with(&r.lhs) {
                return Some((ri, pos));
            }
        }
    }
    None
}

fn rewrite_at(rule: &Rule, w: &[usize], pos: usize) -> Expr {
    let mut out = Expr::new();
    for (c, r) in &rule.rhs {
        let mut nw = w[..pos].to_vec();
        nw.extend_from_slice(r);
        nw.extend_from_slice(&w[pos + rule.lhs.len()..]);
        add_into(&mut out, nw, c.clone());
    }
    out
}

fn normal_form_with(rules: &[Rule], expr: &Expr, strategy: Strategy) -> Expr {
    let mut done = Expr::new();
    let mut todo = expr.clone();
    while let Some((w, c)) = todo.pop_last() {
        match find_occurrence(rules, &w, strategy) {
            None => add_into(&mut done, w, c),
            Some((ri, pos)) => {
                for (nw, nc) in rewrite_at(&rules[ri], &w, pos) {
                    add_into(&mut todo, nw, nc * &c);
                }
            }
        }
    }
    done
}

fn one_step_reductions(rules: &[Rule], w: &[usize]) -> Vec<Expr> {
    let mut out = Vec::new();
    for r in rules {
        for pos in 0..w.len() {
            if w[pos..].starts_with(&r.lhs) {
                out.push(rewrite_at(r, w, pos));
            }
        }
    }
    out
}

/// Words on which both left-hand sides occur overlapping or nested.
fn overlaps(a: &[usize], b: &[usize]) -> Vec<Word> {
    let mut out = Vec::new();
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] == b[..k] {
            let mut w = a.to_vec();
            w.extend_from_slice(&b[k..]);
            out.push(w);
        }
    }
    if a.len() >= b.len() && a.windows(b.len()).any(|win| win == b) && a != b {
        out.push(a.to_vec());
    }
    out
}

/// Adds the central generator `t` and pads every relation with powers of `t`
/// up to the weight of its left-hand side.
pub fn rees_from_filtration(p: &FilteredPresentation) -> Result<ReesPresentation> {
    p.validate()?;
    let t = p.ngens();
    let mut generators = p.generators.clone();
    generators.push("t".into());
    let mut weights = p.weights.clone();
    weights.push(1);
    let mut rules: Vec<Rule> = p
        .all_rules()
        .into_iter()
        .map(|r| {
            let w = p.word_weight(&r.lhs);
            let rhs = r
                .rhs
                .into_iter()
                .map(|(c, mut word)| {
                    let pad = (w - p.word_weight(&word)) as usize;
                    word.extend(std::iter::repeat_n(t, pad));
                    (c, word)
                })
                .collect();
            Rule { lhs: r.lhs, rhs }
        })
        .collect();
    for a in 0..t {
        rules.push(Rule {
            lhs: vec![t, a],
            rhs: vec![(Rat::one(), vec![a, t])],
        });
    }
    let graded = FilteredPresentation {
        generators,
        weights,
        commutative: false,
        central: Some(t),
        rules,
        bound: p.bound,
    };
    graded.validate()?;
    Ok(ReesPresentation {
        source: p.clone(),
        graded,
        t,
    })
}

impl ReesPresentation {
    /// The associated graded presentation: keep only top-weight terms.
    pub fn associated_graded(&self) -> FilteredPresentation {
        let p = &self.source;
        let rules = p
            .all_rules()
            .into_iter()
            .map(|r| {
                let w = p.word_weight(&r.lhs);
                Rule {
                    rhs: r.rhs.into_iter().filter(|(_, word)| p.word_weight(word) == w).collect(),
                    lhs: r.lhs,
                }
            })
            .collect();
        FilteredPresentation {
            commutative: false,
            rules,
            ..p.clone()
        }
    }

    fn drop_t(&self, e: &Expr) -> Expr {
        let mut out = Expr::new();
        for (w, c) in e {
            add_into(
                &mut out,
                w.iter().copied().filter(|&a| a != self.t).collect(),
                c.clone(),
            );
        }
        out
    }

    fn quotient_t(&self, e: &Expr) -> Expr {
        e.iter()
            .filter(|(w, _)| !w.contains(&self.t))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// Verifies, on all words up to the bound: confluence of both systems,
    /// centrality of `t`, `t = 1` specialization and the `(t)`-quotient.
    pub fn verify(&self) -> ReesReport {
        let src = &self.source;
        let gr = self.associated_graded();
        let words = src.words_up_to(src.bound);
        let agree = |p: &FilteredPresentation, w: &[usize]| {
            p.normal_form(&single(w), Strategy::Leftmost) == p.normal_form(&single(w), Strategy::Rightmost)
        };
        let source_confluent = src.critical_pair_failure().is_none() && words.iter().all(|w| agree(src, w));
        let rees_words = self.graded.words_up_to(src.bound);
        let rees_confluent =
            self.graded.critical_pair_failure().is_none() && rees_words.iter().all(|w| agree(&self.graded, w));
        let t_central = rees_words
            .iter()
            .filter(|w| self.graded.word_weight(w) < src.bound)
            .all(|w| {
                let mut tw = vec![self.t];
                tw.extend_from_slice(w);
                let mut wt = w.clone();
                wt.push(self.t);
                self.graded.word_normal_form(&tw) == self.graded.word_normal_form(&wt)
            });
        let mut specializes_to_source = true;
        let mut gr_matches_quotient = true;
        for w in &words {
            let nf = self.graded.word_normal_form(w);
            specializes_to_source &= self.drop_t(&nf) == src.word_normal_form(w);
            gr_matches_quotient &= self.quotient_t(&nf) == gr.word_normal_form(w);
        }
        let n = src.ngens();
        let gr_commutative =
            (0..n).all(|a| (0..n).all(|b| gr.word_normal_form(&[a, b]) == gr.word_normal_form(&[b, a])));
        ReesReport {
            words_checked: words.len() + rees_words.len(),
            source_confluent,
            rees_confluent,
            t_central,
            specializes_to_source,
            gr_matches_quotient,
            gr_commutative,
        }
    }

    /// `NF(ab) − NF(ba)` in the Rees algebra, for generator indices.
    pub fn commutator(&self, a: usize, b: usize) -> Expr {
        let mut e = self.graded.word_normal_form(&[a, b]);
        for (w, c) in self.graded.word_normal_form(&[b, a]) {
            add_into(&mut e, w, -c);
        }
        e
    }
}

/// The Weyl-type presentation `yx → xy − 1` with unit weights.
pub fn weyl_presentation(bound: u32) -> FilteredPresentation {
    FilteredPresentation {
        generators: vec!["x".into(), "y".into()],
        weights: vec![1, 1],
        commutative: false,
        central: None,
        rules: vec![Rule {
            lhs: vec![1, 0],
            rhs: vec![(Rat::one(), vec![0, 1]), (-Rat::one(), vec![])],
        }],
        bound,
    }
}

/// The polynomial ring on named generators, unit weights.
pub fn polynomial_presentation(generators: &[&str], bound: u32) -> FilteredPresentation {
    FilteredPresentation {
        generators: generators.iter().map(|s| s.to_string()).collect(),
        weights: vec![1; generators.len()],
        commutative: true,
        central: None,
        rules: Vec::new(),
        bound,
    }
}
