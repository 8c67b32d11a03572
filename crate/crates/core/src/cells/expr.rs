//! Expressions over a signature and the oriented rewriting relation `⇛` on them.
//!
//! An expression of dimension `n + 1` is built from generators, identities on
//! `n`-cells, whiskerings `u ∘ᵢ t` and `t ∘ᵢ v` by lower cells (`i < n`), and
//! top compositions `t ∘ₙ t′`. The sixteen oriented axioms of precategories
//! form a terminating and confluent relation whose normal forms are exactly
//! the whisker composites stored by [`Cell`].

use super::{Cell, CellError, GenId, OneCell, Result, Signature, Step, ThreeCell, ThreeGenInstance, TwoCell, Whisker2};
use rand::Rng;

/// A generator usable as an expression leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    One(GenId),
    Two(GenId),
    Three(ThreeGenInstance),
}

/// A raw expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Gen(Generator),
    /// Identity on a cell of dimension `n`.
    Id(Cell),
    /// `u ∘ᵢ t` with `u` an `(i+1)`-cell.
    Left { u: Cell, i: usize, t: Box<Expr> },
    /// `t ∘ᵢ v` with `v` an `(i+1)`-cell.
    Right { t: Box<Expr>, i: usize, v: Cell },
    /// Top-dimensional composite `t₁ ∘ₙ t₂`.
    Comp(Box<Expr>, Box<Expr>),
}

/// Reduction strategies for `⇛`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    LeftmostOutermost,
    RightmostInnermost,
    /// Uniform choice among all one-step reducts, seeded.
    Random(u64),
}

/// The lexicographic termination measure `(c_n, l_{n-1}, r_{n-1}, …, l_0, r_0)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure(pub Vec<u128>);

impl Expr {
    pub fn left(u: Cell, i: usize, t: Expr) -> Expr {
        Expr::Left {
            u,
            i,
            t: Box::new(t),
        }
    }

    pub fn right(t: Expr, i: usize, v: Cell) -> Expr {
        Expr::Right {
            t: Box::new(t),
            i,
            v,
        }
    }

    pub fn comp(a: Expr, b: Expr) -> Expr {
        Expr::Comp(Box::new(a), Box::new(b))
    }

    /// Dimension of the cell the expression denotes.
    pub fn dim(&self) -> usize {
        match self {
            Expr::Gen(Generator::One(_)) => 1,
            Expr::Gen(Generator::Two(_)) => 2,
            Expr::Gen(Generator::Three(_)) => 3,
            Expr::Id(c) => c.dim() + 1,
            Expr::Left { t, .. } | Expr::Right { t, .. } => t.dim(),
            Expr::Comp(a, _) => a.dim(),
        }
    }

    /// Number of nodes of the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Gen(_) | Expr::Id(_) => 1,
            Expr::Left { t, .. } | Expr::Right { t, .. } => 1 + t.size(),
            Expr::Comp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// The termination measure; strictly decreases along `⇛`.
    pub fn measure(&self) -> Measure {
        let n = self.dim() - 1;
        let (c, l, r) = self.counts(n);
        let mut v = vec![c];
        for k in (0..n).rev() {
            v.push(l[k]);
            v.push(r[k]);
        }
        Measure(v)
    }

    fn counts(&self, n: usize) -> (u128, Vec<u128>, Vec<u128>) {
        match self {
            Expr::Gen(_) => (0, vec![0; n], vec![0; n]),
            Expr::Id(_) => (1, vec![1; n], vec![1; n]),
            Expr::Comp(a, b) => {
                let (c1, l1, r1) = a.counts(n);
                let (c2, l2, r2) = b.counts(n);
                let l = l1.iter().zip(&l2).map(|(x, y)| x + y + 2).collect();
                let r = r1.iter().zip(&r2).map(|(x, y)| x + y + 2).collect();
                (2 * c1 + c2 + 1, l, r)
            }
            Expr::Left { i: j, t, .. } => {
                let (c, mut l, mut r) = t.counts(n);
                for k in 0..n {
                    l[k] = match j.cmp(&k) {
                        std::cmp::Ordering::Less => l[k],
                        std::cmp::Ordering::Equal => 2 * l[k] + 1,
                        std::cmp::Ordering::Greater => l[k] + 1,
                    };
                    if *j >= k {
                        r[k] += 1;
                    }
                }
                (c, l, r)
            }
            Expr::Right { i: j, t, .. } => {
                let (c, mut l, mut r) = t.counts(n);
                for k in 0..n {
                    if *j > k {
                        l[k] += 1;
                    }
                    r[k] = match j.cmp(&k) {
                        std::cmp::Ordering::Less => r[k],
                        std::cmp::Ordering::Equal => 2 * r[k] + 1,
                        std::cmp::Ordering::Greater => r[k] + 1,
                    };
                }
                (c, l, r)
            }
        }
    }

    /// The canonical normal-form expression of a cell of dimension 1 to 3.
    ///
    /// Whiskers are written `v ∘ᵢ (… (v₀ ∘₀ A ∘₀ w₀) …) ∘ᵢ w` with the outermost
    /// whiskering in the highest dimension and empty contexts omitted; whisker
    /// composites are bracketed on the right.
    pub fn from_cell(c: &Cell) -> Result<Expr> {
        fn chain(mut parts: Vec<Expr>) -> Expr {
            let mut acc = parts.pop().expect("non-empty chain");
            while let Some(p) = parts.pop() {
                acc = Expr::comp(p, acc);
            }
            acc
        }
        fn ctx(core: Expr, l: &Cell, i: usize, r: &Cell) -> Expr {
            let mut e = core;
            if !r.is_identity() {
                e = Expr::right(e, i, r.clone());
            }
            if !l.is_identity() {
                e = Expr::left(l.clone(), i, e);
            }
            e
        }
        Ok(match c {
            Cell::Zero(_) => return Err(CellError::Dimension { k: 0, dim: 0 }),
            Cell::One(u) => {
                if u.is_empty() {
                    Expr::Id(Cell::Zero(u.start))
                } else {
                    chain(u.word.iter().map(|&a| Expr::Gen(Generator::One(a))).collect())
                }
            }
            Cell::Two(phi) => {
                if phi.is_empty() {
                    Expr::Id(Cell::One(phi.source1.clone()))
                } else {
                    chain(
                        phi.whiskers
                            .iter()
                            .map(|w| {
                                ctx(
                                    Expr::Gen(Generator::Two(w.gen)),
                                    &Cell::One(w.left.clone()),
                                    0,
                                    &Cell::One(w.right.clone()),
                                )
                            })
                            .collect(),
                    )
                }
            }
            Cell::Three(f) => {
                if f.is_empty() {
                    Expr::Id(Cell::Two(f.source2.clone()))
                } else {
                    chain(
                        f.steps
                            .iter()
                            .map(|s| {
                                let core = ctx(
                                    Expr::Gen(Generator::Three(s.inner.clone())),
                                    &Cell::One(s.l.clone()),
                                    0,
                                    &Cell::One(s.r.clone()),
                                );
                                ctx(core, &Cell::Two(s.lambda.clone()), 1, &Cell::Two(s.rho.clone()))
                            })
                            .collect(),
                    )
                }
            }
        })
    }
}

fn typing(rule: &'static str, detail: impl Into<String>) -> CellError {
    CellError::Typing {
        rule,
        detail: detail.into(),
    }
}

impl Signature {
    /// Source and target of a well-typed expression, following the sequent rules.
    pub fn type_expr(&self, e: &Expr) -> Result<(Cell, Cell)> {
        match e {
            Expr::Gen(Generator::One(a)) => {
                let g = self
                    .one
                    .get(*a)
                    .ok_or_else(|| typing("generator", format!("no 1-generator {a}")))?;
                Ok((Cell::Zero(g.source), Cell::Zero(g.target)))
            }
            Expr::Gen(Generator::Two(a)) => {
                let g = self
                    .two
                    .get(*a)
                    .ok_or_else(|| typing("generator", format!("no 2-generator {a}")))?;
                Ok((Cell::One(g.source.clone()), Cell::One(g.target.clone())))
            }
            Expr::Gen(Generator::Three(a)) => {
                let (s, t) = self
                    .instance_boundaries(a)
                    .map_err(|err| typing("generator", err.to_string()))?;
                Ok((Cell::Two(s), Cell::Two(t)))
            }
            Expr::Id(c) => {
                if c.dim() > 2 {
                    return Err(typing("identity", "identities on 3-cells are not expressions"));
                }
                self.check_cell(c).map_err(|err| typing("identity", err.to_string()))?;
                Ok((c.clone(), c.clone()))
            }
            Expr::Left { u, i, t } => {
                let (s, tt) = self.type_expr(t)?;
                let n = s.dim();
                if u.dim() != i + 1 || *i >= n {
                    return Err(typing(
                        "left-whisker",
                        format!("need an {}-cell and i < {n}", i + 1),
                    ));
                }
                self.check_cell(u).map_err(|err| typing("left-whisker", err.to_string()))?;
                let s2 = self
                    .compose(u, &s, *i)
                    .map_err(|err| typing("left-whisker", err.to_string()))?;
                let t2 = self
                    .compose(u, &tt, *i)
                    .map_err(|err| typing("left-whisker", err.to_string()))?;
                Ok((s2, t2))
            }
            Expr::Right { t, i, v } => {
                let (s, tt) = self.type_expr(t)?;
                let n = s.dim();
                if v.dim() != i + 1 || *i >= n {
                    return Err(typing(
                        "right-whisker",
                        format!("need an {}-cell and i < {n}", i + 1),
                    ));
                }
                self.check_cell(v).map_err(|err| typing("right-whisker", err.to_string()))?;
                let s2 = self
                    .compose(&s, v, *i)
                    .map_err(|err| typing("right-whisker", err.to_string()))?;
                let t2 = self
                    .compose(&tt, v, *i)
                    .map_err(|err| typing("right-whisker", err.to_string()))?;
                Ok((s2, t2))
            }
            Expr::Comp(a, b) => {
                let (s1, t1) = self.type_expr(a)?;
                let (s2, t2) = self.type_expr(b)?;
                if s1.dim() != s2.dim() {
                    return Err(typing("composition", "operands of different dimensions"));
                }
                if t1 != s2 {
                    return Err(typing(
                        "composition",
                        "target of the first operand differs from source of the second",
                    ));
                }
                Ok((s1, t2))
            }
        }
    }

    /// Checks the invariants of a cell of any dimension.
    pub fn check_cell(&self, c: &Cell) -> Result<()> {
        match c {
            Cell::Zero(x) => {
                if *x < self.zero.len() {
                    Ok(())
                } else {
                    Err(CellError::UnknownGenerator { dim: 0, id: *x })
                }
            }
            Cell::One(u) => self.check_one(u),
            Cell::Two(phi) => self.check_two(phi),
            Cell::Three(f) => self.check_three(f),
        }
    }

    /// Evaluates an expression with the cell algebra; the oracle for `⇛`.
    pub fn eval_expr(&self, e: &Expr) -> Result<Cell> {
        match e {
            Expr::Gen(Generator::One(a)) => {
                let g = self.one.get(*a).ok_or(CellError::UnknownGenerator { dim: 1, id: *a })?;
                Ok(Cell::One(OneCell::new(g.source, vec![*a])))
            }
            Expr::Gen(Generator::Two(a)) => {
                if *a >= self.two.len() {
                    return Err(CellError::UnknownGenerator { dim: 2, id: *a });
                }
                Ok(Cell::Two(self.gen2(*a)))
            }
            Expr::Gen(Generator::Three(a)) => Ok(Cell::Three(self.gen3(a)?)),
            Expr::Id(c) => self.identity(c),
            Expr::Left { u, i, t } => self.compose(u, &self.eval_expr(t)?, *i),
            Expr::Right { t, i, v } => self.compose(&self.eval_expr(t)?, v, *i),
            Expr::Comp(a, b) => {
                let x = self.eval_expr(a)?;
                let y = self.eval_expr(b)?;
                let n = x.dim() - 1;
                self.compose(&x, &y, n)
            }
        }
    }

    /// One-step reducts at the root of an expression, in rule order.
    pub fn root_reducts(&self, e: &Expr) -> Vec<Expr> {
        let mut out = Vec::new();
        let cmp = |a: &Cell, b: &Cell, i: usize| self.compose(a, b, i).ok();
        match e {
            Expr::Comp(a, b) => {
                if let Expr::Id(_) = **a {
                    out.push((**b).clone());
                }
                if let Expr::Id(_) = **b {
                    out.push((**a).clone());
                }
                if let Expr::Comp(t1, t2) = &**a {
                    out.push(Expr::comp((**t1).clone(), Expr::comp((**t2).clone(), (**b).clone())));
                }
            }
            Expr::Left { u, i, t } => {
                if u.is_identity() {
                    out.push((**t).clone());
                }
                match &**t {
                    Expr::Left { u: u2, i: j, t: inner } if j == i => {
                        if let Some(w) = cmp(u, u2, *i) {
                            out.push(Expr::left(w, *i, (**inner).clone()));
                        }
                    }
                    Expr::Left { u: v, i: j, t: inner } if i < j => {
                        if let Some(w) = cmp(u, v, *i) {
                            out.push(Expr::left(w, *j, Expr::left(u.clone(), *i, (**inner).clone())));
                        }
                    }
                    Expr::Right { t: inner, i: j, v: w } if i < j => {
                        if let Some(w2) = cmp(u, w, *i) {
                            out.push(Expr::right(Expr::left(u.clone(), *i, (**inner).clone()), *j, w2));
                        }
                    }
                    Expr::Id(v) => {
                        if let Some(w) = cmp(u, v, *i) {
                            out.push(Expr::Id(w));
                        }
                    }
                    Expr::Comp(t1, t2) => out.push(Expr::comp(
                        Expr::left(u.clone(), *i, (**t1).clone()),
                        Expr::left(u.clone(), *i, (**t2).clone()),
                    )),
                    _ => {}
                }
            }
            Expr::Right { t, i, v } => {
                if v.is_identity() {
                    out.push((**t).clone());
                }
                match &**t {
                    Expr::Right { t: inner, i: j, v: v1 } if j == i => {
                        if let Some(w) = cmp(v1, v, *i) {
                            out.push(Expr::right((**inner).clone(), *i, w));
                        }
                    }
                    Expr::Right { t: inner, i: j, v: v1 } if i < j => {
                        if let Some(w) = cmp(v1, v, *i) {
                            out.push(Expr::right(Expr::right((**inner).clone(), *i, v.clone()), *j, w));
                        }
                    }
                    Expr::Left { u, i: j, t: inner } if j == i => {
                        out.push(Expr::left(u.clone(), *i, Expr::right((**inner).clone(), *i, v.clone())));
                    }
                    Expr::Left { u, i: j, t: inner } if i < j => {
                        if let Some(w) = cmp(u, v, *i) {
                            out.push(Expr::left(w, *j, Expr::right((**inner).clone(), *i, v.clone())));
                        }
                    }
                    Expr::Id(u) => {
                        if let Some(w) = cmp(u, v, *i) {
                            out.push(Expr::Id(w));
                        }
                    }
                    Expr::Comp(t1, t2) => out.push(Expr::comp(
                        Expr::right((**t1).clone(), *i, v.clone()),
                        Expr::right((**t2).clone(), *i, v.clone()),
                    )),
                    _ => {}
                }
            }
            Expr::Gen(_) | Expr::Id(_) => {}
        }
        out
    }

    /// All one-step reducts at every position.
    pub fn reducts(&self, e: &Expr) -> Vec<Expr> {
        let mut out = self.root_reducts(e);
        match e {
            Expr::Left { u, i, t } => {
                for t2 in self.reducts(t) {
                    out.push(Expr::left(u.clone(), *i, t2));
                }
            }
            Expr::Right { t, i, v } => {
                for t2 in self.reducts(t) {
                    out.push(Expr::right(t2, *i, v.clone()));
                }
            }
            Expr::Comp(a, b) => {
                for a2 in self.reducts(a) {
                    out.push(Expr::comp(a2, (**b).clone()));
                }
                for b2 in self.reducts(b) {
                    out.push(Expr::comp((**a).clone(), b2));
                }
            }
            Expr::Gen(_) | Expr::Id(_) => {}
        }
        out
    }

    /// One deterministic step following an innermost or outermost strategy.
    fn step_det(&self, e: &Expr, innermost: bool, leftmost: bool) -> Option<Expr> {
        let root = |e: &Expr| self.root_reducts(e).into_iter().next();
        if !innermost {
            if let Some(x) = root(e) {
                return Some(x);
            }
        }
        let inner = match e {
            Expr::Left { u, i, t } => self
                .step_det(t, innermost, leftmost)
                .map(|t2| Expr::left(u.clone(), *i, t2)),
            Expr::Right { t, i, v } => self
                .step_det(t, innermost, leftmost)
                .map(|t2| Expr::right(t2, *i, v.clone())),
            Expr::Comp(a, b) => {
                let on_a = |s: &Self| s.step_det(a, innermost, leftmost).map(|a2| Expr::comp(a2, (**b).clone()));
                let on_b = |s: &Self| s.step_det(b, innermost, leftmost).map(|b2| Expr::comp((**a).clone(), b2));
                if leftmost {
                    on_a(self).or_else(|| on_b(self))
                } else {
                    on_b(self).or_else(|| on_a(self))
                }
            }
            Expr::Gen(_) | Expr::Id(_) => None,
        };
        if inner.is_some() {
            return inner;
        }
        if innermost {
            root(e)
        } else {
            None
        }
    }

    /// Rewrites an expression to its `⇛`-normal form, returning every visited expression.
    pub fn reduce_trace(&self, e: &Expr, strategy: Strategy) -> Vec<Expr> {
        let mut trace = vec![e.clone()];
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(<rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed)),
            _ => None,
        };
        loop {
            let cur = trace.last().expect("trace is non-empty");
            let next = match strategy {
                Strategy::LeftmostInnermost => self.step_det(cur, true, true),
                Strategy::LeftmostOutermost => self.step_det(cur, false, true),
                Strategy::RightmostInnermost => self.step_det(cur, true, false),
                Strategy::Random(_) => {
                    let mut all = self.reducts(cur);
                    if all.is_empty() {
                        None
                    } else {
                        let k = rng.as_mut().expect("seeded").gen_range(0..all.len());
                        Some(all.swap_remove(k))
                    }
                }
            };
            match next {
                Some(x) => trace.push(x),
                None => return trace,
            }
        }
    }

    /// The `⇛`-normal form of an expression.
    pub fn reduce(&self, e: &Expr, strategy: Strategy) -> Expr {
        self.reduce_trace(e, strategy).pop().expect("trace is non-empty")
    }

    /// Type-checks, normalizes leftmost-innermost and reads off the whisker normal form.
    pub fn normalize_expression(&self, e: &Expr) -> Result<Cell> {
        self.type_expr(e)?;
        let nf = self.reduce(e, Strategy::LeftmostInnermost);
        self.decode_normal(&nf)
    }

    /// Reads a cell from an expression in normal-form shape; fails on any other shape.
    pub fn decode_normal(&self, e: &Expr) -> Result<Cell> {
        let shape = || CellError::Malformed("expression is not in whisker normal form".into());
        fn parts(e: &Expr) -> Vec<&Expr> {
            let mut v = Vec::new();
            let mut cur = e;
            while let Expr::Comp(a, b) = cur {
                v.push(&**a);
                cur = b;
            }
            v.push(cur);
            v
        }
        fn peel<'a>(e: &'a Expr, i: usize) -> (Option<&'a Cell>, &'a Expr, Option<&'a Cell>) {
            let (l, e) = match e {
                Expr::Left { u, i: j, t } if *j == i => (Some(u), &**t),
                _ => (None, e),
            };
            let (e, r) = match e {
                Expr::Right { t, i: j, v } if *j == i => (&**t, Some(v)),
                _ => (e, None),
            };
            (l, e, r)
        }
        let dim = e.dim();
        if let Expr::Id(c) = e {
            return self.identity(c);
        }
        let items = parts(e);
        match dim {
            1 => {
                let mut word = Vec::new();
                for p in items {
                    match p {
                        Expr::Gen(Generator::One(a)) => word.push(*a),
                        _ => return Err(shape()),
                    }
                }
                let start = self.one.get(word[0]).ok_or_else(shape)?.source;
                let u = OneCell::new(start, word);
                self.check_one(&u)?;
                Ok(Cell::One(u))
            }
            2 => {
                let mut whiskers = Vec::new();
                for p in items {
                    let (l, core, r) = peel(p, 0);
                    let Expr::Gen(Generator::Two(a)) = core else {
                        return Err(shape());
                    };
                    let g = self.two.get(*a).ok_or_else(shape)?;
                    let left = match l {
                        Some(c) => c.as_one().ok_or_else(shape)?.clone(),
                        None => OneCell::id(g.source.start),
                    };
                    let right = match r {
                        Some(c) => c.as_one().ok_or_else(shape)?.clone(),
                        None => OneCell::id(self.one_end(&g.source)),
                    };
                    whiskers.push(Whisker2 { left, gen: *a, right });
                }
                let source1 = self.whisker_source(&whiskers[0]);
                let phi = TwoCell { source1, whiskers };
                self.check_two(&phi)?;
                Ok(Cell::Two(phi))
            }
            3 => {
                let mut steps = Vec::new();
                for p in items {
                    let (lam, mid, rho) = peel(p, 1);
                    let (l, core, r) = peel(mid, 0);
                    let Expr::Gen(Generator::Three(a)) = core else {
                        return Err(shape());
                    };
                    let (src, tgt) = self.instance_boundaries(a)?;
                    let l = match l {
                        Some(c) => c.as_one().ok_or_else(shape)?.clone(),
                        None => OneCell::id(src.source1.start),
                    };
                    let r = match r {
                        Some(c) => c.as_one().ok_or_else(shape)?.clone(),
                        None => OneCell::id(self.one_end(&src.source1)),
                    };
                    let lambda = match lam {
                        Some(c) => c.as_two().ok_or_else(shape)?.clone(),
                        None => TwoCell::identity(l.then(&src.source1).then(&r)),
                    };
                    let rho = match rho {
                        Some(c) => c.as_two().ok_or_else(shape)?.clone(),
                        None => TwoCell::identity(l.then(&self.target1(&tgt)).then(&r)),
                    };
                    steps.push(Step {
                        lambda,
                        l,
                        inner: a.clone(),
                        r,
                        rho,
                    });
                }
                let source2 = self.step_source(&steps[0])?;
                let f = ThreeCell { source2, steps };
                self.check_three(&f)?;
                Ok(Cell::Three(f))
            }
            _ => Err(shape()),
        }
    }
}
