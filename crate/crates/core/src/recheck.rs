//! Re-verification of a [`RepresentationCertificate`] from its embedded
//! tables only. Nothing here calls into the lattice, quantale, module or
//! nucleus code; orders, joins and residuals are recomputed from the raw
//! `leq` and multiplication matrices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::representation::{OpTable, RepresentationCertificate, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckItem {
    pub check: String,
    /// Outcome stored in the certificate; absent for table-consistency
    /// checks, which must always pass.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub recorded: Option<bool>,
    pub recomputed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl RecheckItem {
    pub fn consistent(&self) -> bool {
        self.recorded.map_or(self.recomputed, |r| r == self.recomputed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub items: Vec<RecheckItem>,
    pub consistent: bool,
}

impl RecheckReport {
    pub fn first_inconsistent(&self) -> Option<&RecheckItem> {
        self.items.iter().find(|i| !i.consistent())
    }
}

/// A finite order given by its matrix, with joins and meets by search.
struct Order<'a> {
    leq: &'a [Vec<bool>],
}

impl Order<'_> {
    fn len(&self) -> usize {
        self.leq.len()
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    fn extremum(&self, cands: impl Iterator<Item = usize> + Clone, least: bool) -> Option<usize> {
        cands.clone().find(|&c| cands.clone().all(|d| if least { self.le(c, d) } else { self.le(d, c) }))
    }

    fn join(&self, items: &[usize]) -> Option<usize> {
        let n = self.len();
        self.extremum((0..n).filter(|&u| items.iter().all(|&x| self.le(x, u))), true)
    }

    fn meet(&self, items: &[usize]) -> Option<usize> {
        let n = self.len();
        self.extremum((0..n).filter(|&l| items.iter().all(|&x| self.le(l, x))), false)
    }

    fn is_partial_order(&self) -> bool {
        let n = self.len();
        self.leq.iter().all(|r| r.len() == n)
            && (0..n).all(|a| self.le(a, a))
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.le(a, b) && self.le(b, a))))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(self.le(a, b) && self.le(b, c)) || self.le(a, c))))
    }
}

/// Base join table and residuation, recomputed.
struct Base<'a> {
    order: Order<'a>,
    mul: &'a [Vec<usize>],
    join: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    bottom: usize,
}

impl<'a> Base<'a> {
    fn new(leq: &'a [Vec<bool>], mul: &'a [Vec<usize>]) -> Option<Self> {
        let order = Order { leq };
        if !order.is_partial_order() || mul.len() != order.len() || mul.iter().any(|r| r.len() != order.len()) {
            return None;
        }
        let n = order.len();
        let bottom = order.join(&[])?;
        let mut join = vec![vec![0; n]; n];
        for (a, row) in join.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = order.join(&[a, b])?;
            }
        }
        let mut imp = vec![vec![0; n]; n];
        for (q, row) in imp.iter_mut().enumerate() {
            for (s, cell) in row.iter_mut().enumerate() {
                let below: Vec<usize> = (0..n).filter(|&r| order.le(mul[q][r], s)).collect();
                *cell = order.join(&below)?;
            }
        }
        Some(Self { order, mul, join, imp, bottom })
    }

    fn join_all(&self, items: impl Iterator<Item = usize>) -> usize {
        items.fold(self.bottom, |acc, x| self.join[acc][x])
    }
}

fn tuple_iter(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (n as u64).checked_pow(arity as u32).unwrap_or(0) as usize;
    (0..total).map(move |mut i| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    })
}

fn op_at(op: &OpTable, n: usize, args: &[usize]) -> usize {
    op.table[args.iter().fold(0, |acc, &a| acc * n + a)]
}

struct Ctx<'a> {
    cert: &'a RepresentationCertificate,
    base: Base<'a>,
    subject: Order<'a>,
    index: HashMap<&'a [usize], usize>,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.cert.subject.names.len()
    }

    fn free_len(&self) -> usize {
        self.cert.free.members.len()
    }

    fn member(&self, x: usize) -> &[usize] {
        &self.cert.free.members[x]
    }

    fn free_le(&self, x: usize, y: usize) -> bool {
        self.member(x).iter().zip(self.member(y)).all(|(&p, &q)| self.base.order.le(p, q))
    }

    fn lookup(&self, values: &[usize]) -> Option<usize> {
        self.index.get(values).copied()
    }

    fn scale(&self, q: usize, x: usize) -> Option<usize> {
        let v: Vec<usize> = self.member(x).iter().map(|&d| self.base.mul[q][d]).collect();
        self.lookup(&v)
    }

    fn free_join(&self, xs: &[usize]) -> Option<usize> {
        let v: Vec<usize> = (0..self.n()).map(|a| self.base.join_all(xs.iter().map(|&x| self.member(x)[a]))).collect();
        self.lookup(&v)
    }

    fn subject_join(&self, items: &[usize]) -> Option<usize> {
        self.subject.join(items)
    }

    /// Degrees `x ↦ x ↠ a`, looked up among the free members.
    fn beta(&self, a: usize) -> Option<usize> {
        let v: Vec<usize> = (0..self.n()).map(|x| self.cert.subject.residual[x][a]).collect();
        self.lookup(&v)
    }
}

type Outcome = Result<(), String>;
type Check = (&'static str, fn(&Ctx) -> Outcome);

fn shape(cert: &RepresentationCertificate) -> Outcome {
    let q = cert.base.names.len();
    let n = cert.subject.names.len();
    let f = cert.free.members.len();
    let sq = |m: &Vec<Vec<usize>>, r: usize, c: usize| m.len() == r && m.iter().all(|row| row.len() == c);
    let sqb = |m: &Vec<Vec<bool>>, r: usize| m.len() == r && m.iter().all(|row| row.len() == r);
    let ops_ok = |ops: &[OpTable], len: usize, card: usize| {
        ops.iter().all(|o| {
            (len as u64).checked_pow(o.arity as u32) == Some(o.table.len() as u64) && o.table.iter().all(|&v| v < card)
        })
    };
    let k = cert.fixed_points.len();
    let quotient_ok = cert.quotient.as_ref().is_none_or(|quo| {
        sq(&quo.action, q, k)
            && quo.action.iter().flatten().all(|&v| v < k)
            && ops_ok(&quo.ops, k, k)
            && quo.ops.len() == cert.subject.ops.len()
    });
    let checks = [
        ("quotient tables", quotient_ok),
        ("base tables", sqb(&cert.base.leq, q) && sq(&cert.base.mul, q, q) && cert.base.unit < q),
        (
            "subject tables",
            sqb(&cert.subject.leq, n) && sq(&cert.subject.action, q, n) && sq(&cert.subject.residual, n, n),
        ),
        ("subject ops", ops_ok(&cert.subject.ops, n, n)),
        ("free members", cert.free.members.iter().all(|m| m.len() == n && m.iter().all(|&d| d < q))),
        ("free ops", ops_ok(&cert.free.ops, f, f) && cert.free.ops.len() == cert.subject.ops.len()),
        ("epsilon", cert.epsilon.len() == f && cert.epsilon.iter().all(|&a| a < n)),
        ("nucleus", cert.nucleus.len() == f && cert.nucleus.iter().all(|&x| x < f)),
        ("rho", cert.rho.len() == n && cert.rho.iter().all(|&x| x < f)),
        ("fixed points", cert.fixed_points.iter().all(|&x| x < f)),
        (
            "table entries",
            cert.base.mul.iter().flatten().all(|&v| v < q)
                && cert.subject.action.iter().flatten().all(|&v| v < n)
                && cert.subject.residual.iter().flatten().all(|&v| v < q),
        ),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => Err(format!("{what} are malformed")),
        None => Ok(()),
    }
}

/// Re-verifies every table and every recorded check of `cert`.
pub fn recheck(cert: &RepresentationCertificate) -> RecheckReport {
    let mut items = Vec::new();
    fn push(items: &mut Vec<RecheckItem>, check: &str, recorded: Option<bool>, outcome: Outcome) {
        items.push(RecheckItem {
            check: check.to_string(),
            recorded,
            recomputed: outcome.is_ok(),
            witness: outcome.err(),
        });
    }
    if let Err(w) = shape(cert) {
        push(&mut items, "shape", None, Err(w));
        return RecheckReport { items, consistent: false };
    }
    let Some(base) = Base::new(&cert.base.leq, &cert.base.mul) else {
        push(&mut items, "base-order", None, Err("base order is not a complete lattice".into()));
        return RecheckReport { items, consistent: false };
    };
    let subject = Order { leq: &cert.subject.leq };
    if !subject.is_partial_order() {
        push(&mut items, "subject-order", None, Err("subject order is not a partial order".into()));
        return RecheckReport { items, consistent: false };
    }
    let index: HashMap<&[usize], usize> =
        cert.free.members.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let ctx = Ctx { cert, base, subject, index };

    push(&mut items, "free-members", None, free_members(&ctx));
    push(&mut items, "residual-table", None, residual_table(&ctx));
    push(&mut items, "free-ops", None, free_ops(&ctx));
    push(&mut items, "epsilon-table", None, epsilon_table(&ctx));
    push(&mut items, "nucleus-table", None, nucleus_table(&ctx));
    push(&mut items, "fixed-points", None, fixed_points(&ctx));
    push(&mut items, "rho-table", None, rho_table(&ctx));
    if cert.quotient.is_some() {
        push(&mut items, "quotient-tables", None, quotient_tables(&ctx));
    }

    let recorded = |name: &str| cert.checks.iter().find(|c| c.check == name).map(|c| c.passed);
    let named: [Check; 11] = [
        ("nucleus-axioms", nucleus_axioms),
        ("key-inequality", key_inequality),
        ("derived-laws", derived_laws),
        ("quotient", quotient_present),
        ("lemma-epsilon-beta", lemma_epsilon_beta),
        ("lemma-beta-fixed", lemma_beta_fixed),
        ("injective", injective),
        ("surjective", surjective),
        ("epsilon-inverse", epsilon_inverse),
        ("omega-hom", omega_hom),
        ("q-join-preserving", q_join_preserving),
    ];
    for (name, f) in named {
        // a check missing from the certificate is itself a tampering sign
        let rec = Some(recorded(name).unwrap_or(!f(&ctx).is_ok()));
        push(&mut items, name, rec, f(&ctx));
    }
    let all_passed = cert.checks.iter().all(|c| c.passed);
    let verdict_ok = (cert.verdict == Verdict::Pass) == all_passed && cert.checks.len() == named.len();
    push(
        &mut items,
        "verdict",
        None,
        if verdict_ok { Ok(()) } else { Err("verdict disagrees with the checks".into()) },
    );
    let consistent = items.iter().all(RecheckItem::consistent);
    RecheckReport { items, consistent }
}

fn free_members(ctx: &Ctx) -> Outcome {
    let expected = (ctx.base.order.len() as u64).checked_pow(ctx.n() as u32);
    if expected != Some(ctx.free_len() as u64) || ctx.index.len() != ctx.free_len() {
        return Err("free members are not all of Q^A".into());
    }
    Ok(())
}

fn residual_table(ctx: &Ctx) -> Outcome {
    let (s, n, q) = (&ctx.cert.subject, ctx.n(), ctx.base.order.len());
    for a in 0..n {
        for b in 0..n {
            let r = s.residual[a][b];
            if let Some(p) = (0..q).find(|&p| ctx.subject.le(s.action[p][a], b) != ctx.base.order.le(p, r)) {
                return Err(format!("{} ↠ {} at q = {}", s.names[a], s.names[b], ctx.cert.base.names[p]));
            }
        }
    }
    Ok(())
}

fn free_ops(ctx: &Ctx) -> Outcome {
    let (n, f) = (ctx.n(), ctx.free_len());
    for (op, sop) in ctx.cert.free.ops.iter().zip(&ctx.cert.subject.ops) {
        if op.symbol != sop.symbol || op.arity != sop.arity {
            return Err(format!("signature mismatch at {}", op.symbol));
        }
        for args in tuple_iter(f, op.arity) {
            let mut out = vec![ctx.base.bottom; n];
            for gens in tuple_iter(n, op.arity) {
                let degree = args
                    .iter()
                    .zip(&gens)
                    .fold(ctx.cert.base.unit, |acc, (&x, &g)| ctx.base.mul[acc][ctx.member(x)[g]]);
                let t = op_at(sop, n, &gens);
                out[t] = ctx.base.join[out[t]][degree];
            }
            if ctx.lookup(&out) != Some(op_at(op, f, &args)) {
                return Err(format!("{} at {:?}", op.symbol, args));
            }
        }
    }
    Ok(())
}

fn epsilon_table(ctx: &Ctx) -> Outcome {
    let s = &ctx.cert.subject;
    for x in 0..ctx.free_len() {
        let weighted: Vec<usize> = (0..ctx.n()).map(|a| s.action[ctx.member(x)[a]][a]).collect();
        if ctx.subject_join(&weighted) != Some(ctx.cert.epsilon[x]) {
            return Err(format!("ε at free element {x}"));
        }
    }
    Ok(())
}

fn nucleus_table(ctx: &Ctx) -> Outcome {
    for x in 0..ctx.free_len() {
        if ctx.beta(ctx.cert.epsilon[x]) != Some(ctx.cert.nucleus[x]) {
            return Err(format!("j at free element {x}"));
        }
    }
    Ok(())
}

fn fixed_points(ctx: &Ctx) -> Outcome {
    let j = &ctx.cert.nucleus;
    let fixed: Vec<usize> = (0..ctx.free_len()).filter(|&x| j[x] == x).collect();
    if fixed != ctx.cert.fixed_points {
        return Err("fixed-point list differs from {x | j(x) = x}".into());
    }
    Ok(())
}

fn rho_table(ctx: &Ctx) -> Outcome {
    match (0..ctx.n()).find(|&a| ctx.beta(a) != Some(ctx.cert.rho[a])) {
        Some(a) => Err(format!("ρ({})", ctx.cert.subject.names[a])),
        None => Ok(()),
    }
}

fn position(ctx: &Ctx, x: usize) -> Option<usize> {
    ctx.cert.fixed_points.binary_search(&x).ok()
}

fn quotient_tables(ctx: &Ctx) -> Outcome {
    let quo = ctx.cert.quotient.as_ref().expect("caller checked");
    let (fixed, j) = (&ctx.cert.fixed_points, &ctx.cert.nucleus);
    let k = fixed.len();
    for (q, row) in quo.action.iter().enumerate() {
        for (p, &v) in row.iter().enumerate() {
            let expect = ctx.scale(q, fixed[p]).and_then(|y| position(ctx, j[y]));
            if expect != Some(v) {
                return Err(format!("quotient action at q = {}", ctx.cert.base.names[q]));
            }
        }
    }
    for (op, fop) in quo.ops.iter().zip(&ctx.cert.free.ops) {
        for args in tuple_iter(k, op.arity) {
            let lifted: Vec<usize> = args.iter().map(|&p| fixed[p]).collect();
            let expect = position(ctx, j[op_at(fop, ctx.free_len(), &lifted)]);
            if expect != Some(op_at(op, k, &args)) {
                return Err(format!("quotient {} at {:?}", op.symbol, args));
            }
        }
    }
    Ok(())
}

fn nucleus_axioms(ctx: &Ctx) -> Outcome {
    let (f, j) = (ctx.free_len(), &ctx.cert.nucleus);
    for x in 0..f {
        for y in 0..f {
            if ctx.free_le(x, y) && !ctx.free_le(j[x], j[y]) {
                return Err(format!("(i) at free elements {x}, {y}"));
            }
        }
    }
    if let Some(x) = (0..f).find(|&x| !ctx.free_le(x, j[x])) {
        return Err(format!("(ii) at free element {x}"));
    }
    if let Some(x) = (0..f).find(|&x| !ctx.free_le(j[j[x]], j[x])) {
        return Err(format!("(iii) at free element {x}"));
    }
    for op in &ctx.cert.free.ops {
        for args in tuple_iter(f, op.arity) {
            let closed: Vec<usize> = args.iter().map(|&x| j[x]).collect();
            if !ctx.free_le(op_at(op, f, &closed), j[op_at(op, f, &args)]) {
                return Err(format!("(iv) at {}{:?}", op.symbol, args));
            }
        }
    }
    for q in 0..ctx.base.order.len() {
        for x in 0..f {
            match (ctx.scale(q, j[x]), ctx.scale(q, x)) {
                (Some(l), Some(r)) if ctx.free_le(l, j[r]) => {}
                _ => return Err(format!("(v) at q = {}, free element {x}", ctx.cert.base.names[q])),
            }
        }
    }
    Ok(())
}

fn key_inequality(ctx: &Ctx) -> Outcome {
    let (f, n, j, eps) = (ctx.free_len(), ctx.n(), &ctx.cert.nucleus, &ctx.cert.epsilon);
    let s = &ctx.cert.subject;
    for op in &ctx.cert.free.ops {
        for args in tuple_iter(f, op.arity) {
            let closed: Vec<usize> = args.iter().map(|&x| j[x]).collect();
            let lhs = ctx.member(op_at(op, f, &closed));
            let rhs = eps[op_at(op, f, &args)];
            if let Some(a) = (0..n).find(|&a| !ctx.subject.le(s.action[lhs[a]][a], rhs)) {
                return Err(format!("{}{:?} at {}", op.symbol, args, s.names[a]));
            }
        }
    }
    Ok(())
}

fn derived_laws(ctx: &Ctx) -> Outcome {
    let (f, j) = (ctx.free_len(), &ctx.cert.nucleus);
    if let Some(x) = (0..f).find(|&x| j[j[x]] != j[x]) {
        return Err(format!("j∘j at free element {x}"));
    }
    let empty = ctx.free_join(&[]).ok_or("no empty join")?;
    if j[empty] != j[j[empty]] {
        return Err("j(⋁∅)".into());
    }
    for x in 0..f {
        for y in x + 1..f {
            let lhs = ctx.free_join(&[x, y]).map(|z| j[z]);
            let rhs = ctx.free_join(&[j[x], j[y]]).map(|z| j[z]);
            if lhs.is_none() || lhs != rhs {
                return Err(format!("j(⋁S) at free elements {x}, {y}"));
            }
        }
    }
    for op in &ctx.cert.free.ops {
        for args in tuple_iter(f, op.arity) {
            let closed: Vec<usize> = args.iter().map(|&x| j[x]).collect();
            if j[op_at(op, f, &args)] != j[op_at(op, f, &closed)] {
                return Err(format!("j∘{} at {:?}", op.symbol, args));
            }
        }
    }
    for q in 0..ctx.base.order.len() {
        for x in 0..f {
            let lhs = ctx.scale(q, x).map(|y| j[y]);
            if lhs.is_none() || lhs != ctx.scale(q, j[x]).map(|y| j[y]) {
                return Err(format!("j(q*x) at q = {}, free element {x}", ctx.cert.base.names[q]));
            }
        }
    }
    Ok(())
}

fn quotient_present(ctx: &Ctx) -> Outcome {
    match (&ctx.cert.quotient, nucleus_axioms(ctx)) {
        (Some(_), Ok(())) => Ok(()),
        (None, _) => Err("no quotient tables".into()),
        (Some(_), Err(w)) => Err(format!("quotient present without a nucleus: {w}")),
    }
}

fn lemma_epsilon_beta(ctx: &Ctx) -> Outcome {
    let (rho, eps) = (&ctx.cert.rho, &ctx.cert.epsilon);
    match (0..ctx.n()).find(|&a| eps[rho[a]] != a) {
        Some(a) => Err(format!("ε(β_{})", ctx.cert.subject.names[a])),
        None => Ok(()),
    }
}

fn lemma_beta_fixed(ctx: &Ctx) -> Outcome {
    let (rho, j) = (&ctx.cert.rho, &ctx.cert.nucleus);
    match (0..ctx.n()).find(|&a| j[rho[a]] != rho[a]) {
        Some(a) => Err(format!("j(β_{})", ctx.cert.subject.names[a])),
        None => Ok(()),
    }
}

fn injective(ctx: &Ctx) -> Outcome {
    let rho = &ctx.cert.rho;
    for a in 0..ctx.n() {
        for b in a + 1..ctx.n() {
            if rho[a] == rho[b] {
                return Err(format!("ρ({}) = ρ({})", ctx.cert.subject.names[a], ctx.cert.subject.names[b]));
            }
        }
    }
    Ok(())
}

fn surjective(ctx: &Ctx) -> Outcome {
    match ctx.cert.fixed_points.iter().find(|x| !ctx.cert.rho.contains(x)) {
        Some(x) => Err(format!("free element {x} is fixed but no β_a")),
        None => Ok(()),
    }
}

fn epsilon_inverse(ctx: &Ctx) -> Outcome {
    match ctx.cert.fixed_points.iter().find(|&&x| ctx.cert.rho[ctx.cert.epsilon[x]] != x) {
        Some(x) => Err(format!("ρ(ε(x)) ≠ x at free element {x}")),
        None => Ok(()),
    }
}

fn omega_hom(ctx: &Ctx) -> Outcome {
    let quo = ctx.cert.quotient.as_ref().ok_or("no quotient tables")?;
    let (n, rho, fixed) = (ctx.n(), &ctx.cert.rho, &ctx.cert.fixed_points);
    for (op, sop) in quo.ops.iter().zip(&ctx.cert.subject.ops) {
        for args in tuple_iter(n, op.arity) {
            let pos: Option<Vec<usize>> = args.iter().map(|&a| position(ctx, rho[a])).collect();
            let pos = pos.ok_or("some β_a is not fixed")?;
            let lhs = fixed[op_at(op, fixed.len(), &pos)];
            if lhs != rho[op_at(sop, n, &args)] {
                let shown: Vec<&str> = args.iter().map(|&a| ctx.cert.subject.names[a].as_str()).collect();
                return Err(format!("{}({})", op.symbol, shown.join(", ")));
            }
        }
    }
    Ok(())
}

/// The unique `s` with `e(s, b) = ⋀_x (M(x) → e(x, b))` for every `b`.
fn scan_qjoin(base: &Base, e: &dyn Fn(usize, usize) -> usize, len: usize, m: &[usize]) -> Option<usize> {
    let target: Vec<usize> = (0..len)
        .map(|b| {
            let parts: Vec<usize> = (0..len).map(|x| base.imp[m[x]][e(x, b)]).collect();
            base.order.meet(&parts)
        })
        .collect::<Option<_>>()?;
    let hits: Vec<usize> = (0..len).filter(|&s| (0..len).all(|b| e(s, b) == target[b])).collect();
    match hits.as_slice() {
        [s] => Some(*s),
        _ => None,
    }
}

fn q_join_preserving(ctx: &Ctx) -> Outcome {
    let quo = ctx.cert.quotient.as_ref().ok_or("no quotient tables")?;
    let (n, qn, fixed) = (ctx.n(), ctx.base.order.len(), &ctx.cert.fixed_points);
    let k = fixed.len();
    let s = &ctx.cert.subject;
    let e_subject = |a: usize, b: usize| s.residual[a][b];
    // quotient order is pointwise; its residual is read off the action table
    let e_quotient = |x: usize, y: usize| {
        let below: Vec<usize> = (0..qn).filter(|&q| ctx.free_le(fixed[quo.action[q][x]], fixed[y])).collect();
        ctx.base.order.join(&below).unwrap_or(ctx.base.bottom)
    };
    let e_q: Vec<Vec<usize>> = (0..k).map(|x| (0..k).map(|y| e_quotient(x, y)).collect()).collect();
    let rho_pos: Vec<usize> =
        ctx.cert.rho.iter().map(|&x| position(ctx, x)).collect::<Option<_>>().ok_or("some β_a is not fixed")?;
    let subsets: Vec<Vec<usize>> = match &ctx.cert.join_sample {
        Some(sample) => sample.subsets.clone(),
        None => tuple_iter(qn, n).collect(),
    };
    for m in &subsets {
        if m.len() != n || m.iter().any(|&d| d >= qn) {
            return Err("sampled subset is malformed".into());
        }
        let Some(sup) = scan_qjoin(&ctx.base, &e_subject, n, m) else {
            return Err(format!("no unique Q-join of {m:?} in the subject"));
        };
        let mut pushed = vec![ctx.base.bottom; k];
        for a in 0..n {
            pushed[rho_pos[a]] = ctx.base.join[pushed[rho_pos[a]]][m[a]];
        }
        match scan_qjoin(&ctx.base, &|x, y| e_q[x][y], k, &pushed) {
            Some(t) if t == rho_pos[sup] => {}
            _ => return Err(format!("M = {m:?}")),
        }
    }
    Ok(())
}
