//! Frenkel–Kac model of the positive part `n` of the affine Lie algebra.
//!
//! Basis: `e~_a` for every positive real root `a`, and `h_i(m)` for each level
//! `m >= 1` and each vertex `i` other than the chosen extending vertex (these span
//! `C[Q_0] / C delta` at grade `m * delta`). Brackets:
//!
//! ```text
//! [e~_a, e~_b] = c(a, b) e~_{a+b}        if a + b is a real root
//!              = c(a, b) class(a)(m)     if a + b = m delta
//!              = 0                        otherwise
//! [h(m), e~_b] = s(m, b) <h, b> e~_{b + m delta}
//! [h(m), h'(m')] = 0
//! ```
//!
//! where `c` is the cocycle (`eps` or `eps*`), `<,>` is the configured pairing and
//! `s` is the configured sign rule for the mixed bracket.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::quiver::Quiver;
use crate::roots::{AffineRootSystem, RootClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cocycle {
    /// `eps(a, b) = (-1)^{e(a, b)}`.
    Plain,
    /// `eps*(a, b) = eps(a, b) xi(a + b) xi(a) xi(b)`.
    Twisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// Euler form `e(h, b)` evaluated on the canonical representative of `h`.
    Literal,
    /// Symmetrized form `(h, b)`; independent of the representative.
    Symmetrized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixedSign {
    /// Cocycle evaluated on the grades: `c(m delta, b)`.
    Grade,
    /// Cocycle evaluated on the canonical representative: `c(h, b)`.
    Representative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FkConfig {
    pub cocycle: Cocycle,
    pub pairing: Pairing,
    pub mixed_sign: MixedSign,
    pub extending_vertex: usize,
    /// Grades are restricted to the box `0 <= grade <= level_cutoff * delta`.
    pub level_cutoff: u32,
}

impl FkConfig {
    pub fn new(rs: &AffineRootSystem, level_cutoff: u32) -> Self {
        FkConfig {
            cocycle: Cocycle::Plain,
            pairing: Pairing::Symmetrized,
            mixed_sign: MixedSign::Grade,
            extending_vertex: rs.affine().default_extending_vertex(),
            level_cutoff,
        }
    }

    pub fn with_pairing(mut self, pairing: Pairing) -> Self {
        self.pairing = pairing;
        self
    }

    pub fn with_cocycle(mut self, cocycle: Cocycle) -> Self {
        self.cocycle = cocycle;
        self
    }

    pub fn with_mixed_sign(mut self, mixed_sign: MixedSign) -> Self {
        self.mixed_sign = mixed_sign;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKey {
    Real(LatticeVector),
    Imag { level: u32, vertex: usize },
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Real(a) => write!(f, "e{a}"),
            BasisKey::Imag { level, vertex } => write!(f, "h{vertex}({level})"),
        }
    }
}

/// Finitely supported rational combination of basis keys; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FkElement {
    terms: BTreeMap<BasisKey, BigRational>,
}

impl FkElement {
    pub fn zero() -> Self {
        FkElement::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        let mut e = FkElement::zero();
        e.add_term(key, BigRational::one());
        e
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_int(&mut self, key: BasisKey, coeff: i64) {
        self.add_term(key, BigRational::from_integer(BigInt::from(coeff)));
    }

    pub fn add_scaled(&mut self, other: &FkElement, factor: &BigRational) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> FkElement {
        let mut out = FkElement::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn negated(&self) -> FkElement {
        self.scaled(&-BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &BasisKey) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl std::ops::Add<&FkElement> for &FkElement {
    type Output = FkElement;
    fn add(self, rhs: &FkElement) -> FkElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigRational::one());
        out
    }
}

impl std::ops::Sub<&FkElement> for &FkElement {
    type Output = FkElement;
    fn sub(self, rhs: &FkElement) -> FkElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl fmt::Display for FkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{key}")?;
        }
        Ok(())
    }
}

fn sign_of_parity(x: i64) -> i64 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `eps(a, b) = (-1)^{e(a, b)}`.
pub fn epsilon(q: &Quiver, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
    Ok(sign_of_parity(q.euler_form(a, b)?))
}

/// `xi(a) = (-1)^{1 + dim End(P)}` for an indecomposable `P` of dimension `a`; `+1` off the positive roots.
pub fn xi(rs: &AffineRootSystem, a: &LatticeVector) -> Result<i64> {
    Ok(match rs.indecomposable_end_dim(a)? {
        Some(d) => sign_of_parity(1 + d),
        None => 1,
    })
}

pub fn epsilon_star(rs: &AffineRootSystem, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
    let q = rs.quiver();
    Ok(epsilon(q, a, b)? * xi(rs, &(a + b))? * xi(rs, a)? * xi(rs, b)?)
}

/// 1 for positive real roots, `n` at positive multiples of `delta`, 0 elsewhere.
pub fn graded_dimension(rs: &AffineRootSystem, a: &LatticeVector) -> Result<i64> {
    if !a.is_positive() {
        return Ok(0);
    }
    Ok(match rs.classify_root(a)? {
        RootClass::Root(r) => r.multiplicity,
        RootClass::NonRoot => 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: BasisKey,
    pub y: BasisKey,
    pub z: BasisKey,
    pub residual: FkElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreCheck {
    pub i: usize,
    pub j: usize,
    /// `1 - c_ij`.
    pub power: u32,
    /// Whether `(ad e_i)^power e_j` vanishes; `None` if an intermediate grade left the cutoff.
    pub vanishes: Option<bool>,
    /// Whether `(ad e_i)^(power-1) e_j` is nonzero; `None` if its grade is beyond the cutoff.
    pub lower_nonzero: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreReport {
    pub checks: Vec<SerreCheck>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.vanishes != Some(false) && c.lower_nonzero != Some(false))
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| c.vanishes.is_none()).count()
    }
}

/// The truncated algebra `n^eps` (or `n^eps*`) up to a level cutoff.
#[derive(Debug, Clone)]
pub struct FkAlgebra {
    rs: AffineRootSystem,
    cfg: FkConfig,
    bound: LatticeVector,
    basis: Vec<BasisKey>,
}

impl FkAlgebra {
    pub fn new(rs: &AffineRootSystem, cfg: FkConfig) -> Result<Self> {
        let delta = rs.delta();
        if cfg.extending_vertex >= delta.len() || delta[cfg.extending_vertex] != 1 {
            return Err(Error::NotAffine(format!(
                "vertex {} is not an extending vertex",
                cfg.extending_vertex
            )));
        }
        let bound = cfg.level_cutoff as i64 * delta;
        let mut basis = Vec::new();
        for a in bound.box_below() {
            if rs.is_positive_real_root(&a)? {
                basis.push(BasisKey::Real(a));
            }
        }
        for level in 1..=cfg.level_cutoff {
            for vertex in 0..delta.len() {
                if vertex != cfg.extending_vertex {
                    basis.push(BasisKey::Imag { level, vertex });
                }
            }
        }
        basis.sort();
        Ok(FkAlgebra {
            rs: rs.clone(),
            cfg,
            bound,
            basis,
        })
    }

    pub fn config(&self) -> &FkConfig {
        &self.cfg
    }

    pub fn root_system(&self) -> &AffineRootSystem {
        &self.rs
    }

    pub fn basis(&self) -> &[BasisKey] {
        &self.basis
    }

    pub fn grade(&self, key: &BasisKey) -> LatticeVector {
        match key {
            BasisKey::Real(a) => a.clone(),
            BasisKey::Imag { level, .. } => *level as i64 * self.rs.delta(),
        }
    }

    pub fn within_cutoff(&self, grade: &LatticeVector) -> bool {
        grade.is_nonnegative() && grade.le(&self.bound)
    }

    pub fn basis_count_at(&self, grade: &LatticeVector) -> usize {
        self.basis.iter().filter(|k| &self.grade(k) == grade).count()
    }

    fn cocycle(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        match self.cfg.cocycle {
            Cocycle::Plain => epsilon(self.rs.quiver(), a, b),
            Cocycle::Twisted => epsilon_star(&self.rs, a, b),
        }
    }

    /// Image of `a` in `C[Q_0] / C delta` at level `m`, in the `h_i(m)` basis.
    pub fn canonical_class(&self, a: &LatticeVector, m: u32) -> Result<FkElement> {
        self.rs.quiver().check(a)?;
        let e = self.cfg.extending_vertex;
        let rep = a - &(a[e] * self.rs.delta());
        let mut out = FkElement::zero();
        for (i, &c) in rep.iter().enumerate() {
            if i != e {
                out.add_int(BasisKey::Imag { level: m, vertex: i }, c);
            }
        }
        Ok(out)
    }

    fn mixed(&self, level: u32, vertex: usize, b: &LatticeVector) -> Result<FkElement> {
        let q = self.rs.quiver();
        let h = q.simple_root(vertex);
        let shift = level as i64 * self.rs.delta();
        let sign = match self.cfg.mixed_sign {
            MixedSign::Grade => self.cocycle(&shift, b)?,
            MixedSign::Representative => self.cocycle(&h, b)?,
        };
        let pairing = match self.cfg.pairing {
            Pairing::Literal => q.euler_form(&h, b)?,
            Pairing::Symmetrized => q.symmetrized_form(&h, b)?,
        };
        let mut out = FkElement::zero();
        out.add_int(BasisKey::Real(b + &shift), sign * pairing);
        Ok(out)
    }

    fn bracket_keys_unchecked(&self, x: &BasisKey, y: &BasisKey) -> Result<FkElement> {
        match (x, y) {
            (BasisKey::Real(a), BasisKey::Real(b)) => {
                let s = a + b;
                if self.rs.is_positive_real_root(&s)? {
                    let mut out = FkElement::zero();
                    out.add_int(BasisKey::Real(s), self.cocycle(a, b)?);
                    Ok(out)
                } else if let Some(m) = self.rs.delta_multiple(&s).filter(|&m| m > 0) {
                    let class = self.canonical_class(a, m as u32)?;
                    let c = BigRational::from_integer(BigInt::from(self.cocycle(a, b)?));
                    Ok(class.scaled(&c))
                } else {
                    Ok(FkElement::zero())
                }
            }
            (BasisKey::Imag { level, vertex }, BasisKey::Real(b)) => self.mixed(*level, *vertex, b),
            (BasisKey::Real(_), BasisKey::Imag { .. }) => {
                Ok(self.bracket_keys_unchecked(y, x)?.negated())
            }
            (BasisKey::Imag { .. }, BasisKey::Imag { .. }) => Ok(FkElement::zero()),
        }
    }

    /// Bracket of two basis keys, with the grading asserted on the result.
    pub fn bracket_keys(&self, x: &BasisKey, y: &BasisKey) -> Result<FkElement> {
        let out = self.bracket_keys_unchecked(x, y)?;
        if out.is_zero() {
            return Ok(out);
        }
        let grade = &self.grade(x) + &self.grade(y);
        if !self.within_cutoff(&grade) {
            return Err(Error::CutoffExceeded(grade.into_inner()));
        }
        for (k, _) in out.terms() {
            if self.grade(k) != grade {
                return Err(Error::Assertion(format!(
                    "[{x}, {y}] produced {k} outside grade {grade}"
                )));
            }
        }
        Ok(out)
    }

    /// Bilinear extension of the basis bracket.
    pub fn bracket(&self, x: &FkElement, y: &FkElement) -> Result<FkElement> {
        let mut out = FkElement::zero();
        for (kx, cx) in x.terms() {
            for (ky, cy) in y.terms() {
                let b = self.bracket_keys(kx, ky)?;
                out.add_scaled(&b, &(cx * cy));
            }
        }
        Ok(out)
    }

    fn jacobiator(&self, x: &BasisKey, y: &BasisKey, z: &BasisKey) -> Result<FkElement> {
        let (ex, ey, ez) = (
            FkElement::basis(x.clone()),
            FkElement::basis(y.clone()),
            FkElement::basis(z.clone()),
        );
        let a = self.bracket(&ex, &self.bracket(&ey, &ez)?)?;
        let b = self.bracket(&ey, &self.bracket(&ez, &ex)?)?;
        let c = self.bracket(&ez, &self.bracket(&ex, &ey)?)?;
        Ok(&(&a + &b) + &c)
    }

    /// Checks the Jacobi identity on every basis triple whose total grade is within the cutoff.
    pub fn verify_jacobi(&self) -> Result<JacobiReport> {
        let n = self.basis.len();
        let grades: Vec<LatticeVector> = self.basis.iter().map(|k| self.grade(k)).collect();
        let per_i: Vec<Result<(usize, Vec<Violation>)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut checked = 0;
                let mut violations = Vec::new();
                for j in i..n {
                    let gij = &grades[i] + &grades[j];
                    if !self.within_cutoff(&gij) {
                        continue;
                    }
                    for k in j..n {
                        let g = &gij + &grades[k];
                        if !self.within_cutoff(&g) {
                            continue;
                        }
                        checked += 1;
                        let (x, y, z) = (&self.basis[i], &self.basis[j], &self.basis[k]);
                        let residual = self.jacobiator(x, y, z)?;
                        if !residual.is_zero() {
                            violations.push(Violation {
                                x: x.clone(),
                                y: y.clone(),
                                z: z.clone(),
                                residual,
                            });
                        }
                    }
                }
                Ok((checked, violations))
            })
            .collect();
        let mut triples_checked = 0;
        let mut violations = Vec::new();
        for r in per_i {
            let (c, v) = r?;
            triples_checked += c;
            violations.extend(v);
        }
        let total = n * (n + 1) * (n + 2) / 6;
        Ok(JacobiReport {
            triples_checked,
            skipped: total - triples_checked,
            violations,
        })
    }

    /// Basis pairs `(x, y)` within the cutoff with `[x, y] != -[y, x]`.
    pub fn verify_antisymmetry(&self) -> Result<Vec<(BasisKey, BasisKey)>> {
        let mut bad = Vec::new();
        for x in &self.basis {
            for y in &self.basis {
                if !self.within_cutoff(&(&self.grade(x) + &self.grade(y))) {
                    continue;
                }
                let xy = self.bracket_keys(x, y)?;
                let yx = self.bracket_keys(y, x)?;
                if !(&xy + &yx).is_zero() {
                    bad.push((x.clone(), y.clone()));
                }
            }
        }
        Ok(bad)
    }

    pub fn verify_serre(&self) -> Result<SerreReport> {
        let q = self.rs.quiver();
        let cartan = q.cartan_matrix();
        let mut checks = Vec::new();
        for i in 0..q.vertex_count() {
            for j in 0..q.vertex_count() {
                if i == j {
                    continue;
                }
                let power = (1 - cartan[(i, j)]) as u32;
                let ei = FkElement::basis(BasisKey::Real(q.simple_root(i)));
                let mut chain = vec![FkElement::basis(BasisKey::Real(q.simple_root(j)))];
                let mut complete = true;
                for _ in 0..power {
                    match self.bracket(&ei, chain.last().expect("nonempty")) {
                        Ok(next) => chain.push(next),
                        Err(Error::CutoffExceeded(_)) => {
                            complete = false;
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                let lower_grade = &q.simple_root(j) + &((power as i64 - 1) * &q.simple_root(i));
                let lower_nonzero = if self.within_cutoff(&lower_grade) {
                    chain.get(power as usize - 1).map(|x| !x.is_zero())
                } else {
                    None
                };
                checks.push(SerreCheck {
                    i,
                    j,
                    power,
                    vanishes: complete.then(|| chain[power as usize].is_zero()),
                    lower_nonzero,
                });
            }
        }
        Ok(SerreReport { checks })
    }

    /// Diagonal sign map `e~_a -> xi(a) e~_a`, `h(m) -> xi(m delta) h(m)`.
    pub fn twist_sign(&self, key: &BasisKey) -> Result<i64> {
        xi(&self.rs, &self.grade(key))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistReport {
    pub pairs_checked: usize,
    pub failures: Vec<(BasisKey, BasisKey)>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the diagonal map `phi(k) = sign(k) k` intertwines the `eps`-bracket with the
/// `eps*`-bracket on all basis pairs within the cutoff.
pub fn twist_check_with<F>(plain: &FkAlgebra, twisted: &FkAlgebra, sign: F) -> Result<TwistReport>
where
    F: Fn(&BasisKey) -> Result<i64>,
{
    let phi = |x: &FkElement| -> Result<FkElement> {
        let mut out = FkElement::zero();
        for (k, c) in x.terms() {
            let s = BigRational::from_integer(BigInt::from(sign(k)?));
            out.add_term(k.clone(), c * s);
        }
        Ok(out)
    };
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for x in plain.basis() {
        for y in plain.basis() {
            if !plain.within_cutoff(&(&plain.grade(x) + &plain.grade(y))) {
                continue;
            }
            pairs_checked += 1;
            let (ex, ey) = (FkElement::basis(x.clone()), FkElement::basis(y.clone()));
            let lhs = phi(&plain.bracket(&ex, &ey)?)?;
            let rhs = twisted.bracket(&phi(&ex)?, &phi(&ey)?)?;
            if lhs != rhs {
                failures.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(TwistReport {
        pairs_checked,
        failures,
    })
}

/// Twist isomorphism `n^eps -> n^eps*` for the given base configuration.
pub fn twist_isomorphism_check(rs: &AffineRootSystem, cfg: FkConfig) -> Result<TwistReport> {
    let plain = FkAlgebra::new(rs, cfg.with_cocycle(Cocycle::Plain))?;
    let twisted = FkAlgebra::new(rs, cfg.with_cocycle(Cocycle::Twisted))?;
    twist_check_with(&plain, &twisted, |k| plain.twist_sign(k))
}
