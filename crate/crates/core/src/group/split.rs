//! Split extensions `W` of a space group `G ≤ Sym(X)` by functions
//! `X → Γ`, parameterised by an antihomomorphism `μ` and a map `κ` on `G`.

use std::collections::BTreeMap;

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

/// The `(μ, κ)` data of the extension.
#[derive(Clone, Debug)]
pub enum Twist {
    /// `μ(a) = a^{-m}`, `κ(a) = a^k` with `m ∈ {0, 1}`.
    Power { m: u8, k: i64 },
    /// Explicit tables over every element of the space group.
    Tables { mu: BTreeMap<Perm, Perm>, kappa: BTreeMap<Perm, Perm> },
}

impl Twist {
    pub fn power(m: u8, k: i64) -> Result<Self> {
        if m > 1 {
            return Err(Error::invalid(format!("m must be 0 or 1, got {m}")));
        }
        Ok(Twist::Power { m, k })
    }

    /// Tabulates a power twist over the elements of `g`.
    pub fn tabulate(&self, g: &PermGroup) -> Result<Twist> {
        let mut mu = BTreeMap::new();
        let mut kappa = BTreeMap::new();
        for a in g.elements()? {
            mu.insert(a.clone(), self.mu(a)?);
            kappa.insert(a.clone(), self.kappa(a)?);
        }
        Ok(Twist::Tables { mu, kappa })
    }

    pub fn mu(&self, a: &Perm) -> Result<Perm> {
        match self {
            Twist::Power { m, .. } => Ok(a.pow(-(*m as i64))),
            Twist::Tables { mu, .. } => {
                mu.get(a).cloned().ok_or_else(|| Error::invalid(format!("μ undefined at {a}")))
            }
        }
    }

    pub fn kappa(&self, a: &Perm) -> Result<Perm> {
        match self {
            Twist::Power { k, .. } => Ok(a.pow(*k)),
            Twist::Tables { kappa, .. } => {
                kappa.get(a).cloned().ok_or_else(|| Error::invalid(format!("κ undefined at {a}")))
            }
        }
    }
}

/// `(α, a)` with `α(x) ∈ Γ` stored per point and `a ∈ G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WElement {
    pub alpha: Vec<Perm>,
    pub a: Perm,
}

/// The extension `W` itself: space group, internal group (as permutations
/// of the cell values) and twist.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    space: PermGroup,
    internal: PermGroup,
    twist: Twist,
}

impl SplitExtension {
    pub fn new(space: PermGroup, internal: PermGroup, twist: Twist) -> Result<Self> {
        if let Twist::Tables { mu, .. } = &twist {
            let elems = space.elements()?;
            for a in elems {
                for b in elems {
                    let ab = a.then(b);
                    let lhs = mu.get(&ab);
                    let rhs = mu.get(b).zip(mu.get(a)).map(|(mb, ma)| mb.then(ma));
                    if lhs.is_none() || lhs.cloned() != rhs {
                        return Err(Error::invalid("μ is not an antihomomorphism on G"));
                    }
                }
            }
        }
        Ok(SplitExtension { space, internal, twist })
    }

    pub fn space(&self) -> &PermGroup {
        &self.space
    }

    pub fn internal(&self) -> &PermGroup {
        &self.internal
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    fn points(&self) -> usize {
        self.space.degree()
    }

    pub fn identity(&self) -> WElement {
        WElement {
            alpha: vec![Perm::identity(self.internal.degree()); self.points()],
            a: Perm::identity(self.points()),
        }
    }

    fn check(&self, u: &WElement) -> Result<()> {
        if u.alpha.len() != self.points() || u.a.degree() != self.points() {
            return Err(Error::invalid("element does not match the space group"));
        }
        Ok(())
    }

    /// `α(x·p)` for every `x`.
    fn shifted(alpha: &[Perm], p: &Perm) -> Vec<Perm> {
        (0..alpha.len()).map(|x| alpha[p.apply(x)].clone()).collect()
    }

    pub fn multiply(&self, u: &WElement, v: &WElement) -> Result<WElement> {
        self.check(u)?;
        self.check(v)?;
        let (a, b) = (&u.a, &v.a);
        let ab = a.then(b);
        let (pa, pb) = match self.twist {
            Twist::Power { m, k } => {
                let m = m as i64;
                (ab.pow(-k - m).then(&a.pow(k + m)), ab.pow(-k).then(&b.pow(k)))
            }
            Twist::Tables { .. } => {
                let kab_inv = self.twist.kappa(&ab)?.inverse();
                (
                    kab_inv.then(&self.twist.mu(b)?).then(&self.twist.kappa(a)?),
                    kab_inv.then(&self.twist.kappa(b)?),
                )
            }
        };
        let left = Self::shifted(&u.alpha, &pa);
        let right = Self::shifted(&v.alpha, &pb);
        let alpha = left.iter().zip(&right).map(|(x, y)| x.then(y)).collect();
        Ok(WElement { alpha, a: ab })
    }

    pub fn inverse(&self, u: &WElement) -> Result<WElement> {
        self.check(u)?;
        let a = &u.a;
        let p = match self.twist {
            Twist::Power { m, k } => a.pow(2 * k + m as i64),
            Twist::Tables { .. } => self
                .twist
                .kappa(&a.inverse())?
                .inverse()
                .then(&self.twist.mu(a)?.inverse())
                .then(&self.twist.kappa(a)?),
        };
        let alpha = Self::shifted(&u.alpha, &p).iter().map(Perm::inverse).collect();
        Ok(WElement { alpha, a: a.inverse() })
    }

    /// `(σ·u)(x) = σ(x·μ(a)) · α(x·κ(a))` on a state of cell values.
    pub fn act(&self, state: &[u32], u: &WElement) -> Result<Vec<u32>> {
        self.check(u)?;
        if state.len() != self.points() {
            return Err(Error::invalid("state length does not match the space"));
        }
        let mu = self.twist.mu(&u.a)?;
        let kappa = self.twist.kappa(&u.a)?;
        Ok((0..state.len())
            .map(|x| {
                let v = state[mu.apply(x)] as usize;
                u.alpha[kappa.apply(x)].apply(v) as u32
            })
            .collect())
    }

    /// Every element of `W`; `|W| = |Γ|^|X| · |G|`.
    pub fn elements(&self) -> Result<Vec<WElement>> {
        let gamma = self.internal.elements()?;
        let n = self.points();
        let count = (gamma.len() as u128).pow(n as u32) * self.space.order()? as u128;
        if count > super::DEFAULT_ELEMENT_CAP as u128 {
            return Err(Error::CapExceeded {
                what: "split extension enumeration",
                requested: count,
                cap: super::DEFAULT_ELEMENT_CAP as u128,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        for a in self.space.elements()? {
            let mut digits = vec![0usize; n];
            loop {
                out.push(WElement {
                    alpha: digits.iter().map(|&d| gamma[d].clone()).collect(),
                    a: a.clone(),
                });
                let mut i = 0;
                while i < n {
                    digits[i] += 1;
                    if digits[i] < gamma.len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        Ok(out)
    }
}
