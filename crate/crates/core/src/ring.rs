//! Exact arithmetic in `Z_2k` and the interval spaces built on top of it.
//!
//! Everything is a residue modulo an even number `2k >= 4`. An interval
//! attaches one residue (first species) or an ordered pair of residues
//! (second species: downbeat and upbeat) to a cantus firmus tone, in the
//! sweeping orientation (discantus pitch = cantus + interval).

use std::fmt;

use thiserror::Error;

/// Errors from residue and interval arithmetic.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must be an even integer in [4, 32], got {0}")]
    InvalidModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },
}

/// The even modulus `2k` of the tone system. Capped at 32 so that subsets
/// of `Z_2k` fit in a `u32` bitmask throughout the engine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Modulus(u32);

impl Modulus {
    pub const MAX: u32 = 32;

    pub fn new(value: u32) -> Result<Self, RingError> {
        if !(4..=Self::MAX).contains(&value) || !value.is_multiple_of(2) {
            return Err(RingError::InvalidModulus(value));
        }
        Ok(Modulus(value))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `k`, the size of one dichotomy half.
    pub fn half(self) -> u32 {
        self.0 / 2
    }

    /// The residue of `value`, reduced into `[0, 2k)`.
    pub fn residue(self, value: i64) -> Residue {
        Residue::new(value, self)
    }

    pub fn residues(self) -> impl Iterator<Item = Residue> {
        (0..self.0).map(move |v| Residue {
            value: v,
            modulus: self,
        })
    }

    /// The units of `Z_2k`, ascending.
    pub fn units(self) -> Vec<Residue> {
        coprime_residues(self.0)
            .into_iter()
            .map(|v| Residue {
                value: v,
                modulus: self,
            })
            .collect()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The residues of `Z_m` coprime to `m`, ascending. Works for any `m >= 1`,
/// independently of the dichotomy-grade [`Modulus`] restrictions.
pub fn coprime_residues(m: u32) -> Vec<u32> {
    (0..m.max(1)).filter(|&v| gcd(v, m) == 1).collect()
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Bitmask with the low `m` bits set (`m <= 32`).
pub(crate) fn full_mask(m: u32) -> u32 {
    debug_assert!((1..=32).contains(&m));
    u32::MAX >> (32 - m)
}

/// An element of `Z_2k`, stored fully reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let m = i64::from(modulus.get());
        Residue {
            value: value.rem_euclid(m) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus.get()) == 1
    }

    /// Multiplicative inverse, if this residue is a unit.
    pub fn inverse(self) -> Option<Residue> {
        let m = self.modulus.get();
        (0..m).find(|&w| self.value * w % m == 1).map(|w| Residue {
            value: w,
            modulus: self.modulus,
        })
    }

    fn same_modulus(self, other: Residue) -> Result<(), RingError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(RingError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ))
        }
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                assert_eq!(
                    self.modulus, rhs.modulus,
                    "modulus mismatch in residue arithmetic"
                );
                Residue::new(i64::from(self.value) $op i64::from(rhs.value), self.modulus)
            }
        }
    };
}

residue_binop!(Add, add, +);
residue_binop!(Sub, sub, -);
residue_binop!(Mul, mul, *);

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new(-i64::from(self.value), self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The affine symmetry `T^u.v : x -> vx + u` on `Z_2k`, with `v` a unit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineMap {
    u: Residue,
    v: Residue,
}

impl AffineMap {
    pub fn new(u: Residue, v: Residue) -> Result<Self, RingError> {
        u.same_modulus(v)?;
        if !v.is_unit() {
            return Err(RingError::NotAUnit {
                value: v.value(),
                modulus: v.modulus().get(),
            });
        }
        Ok(AffineMap { u, v })
    }

    pub fn identity(m: Modulus) -> Self {
        AffineMap {
            u: m.residue(0),
            v: m.residue(1),
        }
    }

    /// Translation part `u`.
    pub fn translation(self) -> Residue {
        self.u
    }

    /// Linear part `v`.
    pub fn linear(self) -> Residue {
        self.v
    }

    pub fn modulus(self) -> Modulus {
        self.u.modulus()
    }

    pub fn apply(self, x: Residue) -> Result<Residue, RingError> {
        self.u.same_modulus(x)?;
        Ok(self.v * x + self.u)
    }

    /// `self . g`, the map `x -> self(g(x))`.
    pub fn compose(self, g: AffineMap) -> Result<AffineMap, RingError> {
        self.u.same_modulus(g.u)?;
        Ok(AffineMap {
            u: self.v * g.u + self.u,
            v: self.v * g.v,
        })
    }

    pub fn inverse(self) -> AffineMap {
        let v_inv = self.v.inverse().expect("linear part is a unit");
        AffineMap {
            u: -(v_inv * self.u),
            v: v_inv,
        }
    }

    pub fn is_involution(self) -> bool {
        let sq = self.compose(self).expect("same modulus");
        sq == AffineMap::identity(self.modulus())
    }

    /// All `2k * phi(2k)` affine symmetries of `Z_2k`, ordered by `(u, v)`.
    pub fn all(m: Modulus) -> Vec<AffineMap> {
        let mut maps = Vec::new();
        for u in m.residues() {
            for v in m.units() {
                maps.push(AffineMap { u, v });
            }
        }
        maps
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}.{}", self.u, self.v)
    }
}

/// A first-species interval `c + e1.x`: cantus firmus `c` carrying the
/// interval `x` to its discantus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FirstInterval {
    c: Residue,
    x: Residue,
}

impl FirstInterval {
    pub fn new(c: Residue, x: Residue) -> Result<Self, RingError> {
        c.same_modulus(x)?;
        Ok(FirstInterval { c, x })
    }

    pub fn from_values(m: Modulus, c: i64, x: i64) -> Self {
        FirstInterval {
            c: m.residue(c),
            x: m.residue(x),
        }
    }

    pub fn cantus(self) -> Residue {
        self.c
    }

    pub fn interval(self) -> Residue {
        self.x
    }

    pub fn modulus(self) -> Modulus {
        self.c.modulus()
    }

    /// The same interval over a cantus shifted by `offset`.
    pub fn translate_cantus(self, offset: Residue) -> Result<Self, RingError> {
        self.c.same_modulus(offset)?;
        Ok(FirstInterval {
            c: self.c + offset,
            x: self.x,
        })
    }
}

impl fmt::Display for FirstInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+e1.{}", self.c, self.x)
    }
}

/// A second-species 2-interval `c + e1.x + e2.y`: downbeat interval `x` and
/// upbeat interval `y` over one cantus firmus tone `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwoInterval {
    c: Residue,
    x: Residue,
    y: Residue,
}

impl TwoInterval {
    pub fn new(c: Residue, x: Residue, y: Residue) -> Result<Self, RingError> {
        c.same_modulus(x)?;
        c.same_modulus(y)?;
        Ok(TwoInterval { c, x, y })
    }

    pub fn from_values(m: Modulus, c: i64, x: i64, y: i64) -> Self {
        TwoInterval {
            c: m.residue(c),
            x: m.residue(x),
            y: m.residue(y),
        }
    }

    pub fn cantus(self) -> Residue {
        self.c
    }

    pub fn downbeat(self) -> Residue {
        self.x
    }

    pub fn upbeat(self) -> Residue {
        self.y
    }

    pub fn modulus(self) -> Modulus {
        self.c.modulus()
    }

    /// Drops the upbeat: the first-species interval at the downbeat.
    pub fn downbeat_interval(self) -> FirstInterval {
        FirstInterval {
            c: self.c,
            x: self.x,
        }
    }

    pub fn translate_cantus(self, offset: Residue) -> Result<Self, RingError> {
        self.c.same_modulus(offset)?;
        Ok(TwoInterval {
            c: self.c + offset,
            x: self.x,
            y: self.y,
        })
    }
}

impl fmt::Display for TwoInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+e1.{}+e2.{}", self.c, self.x, self.y)
    }
}

/// A species projection `Z_2k[e1,e2] -> Z_2k[e1]` with parameters
/// `(t1, t2, s, w1, w2)`, `s` a unit:
///
/// ```text
/// c + e1.x + e2.y  ->  [s.c + t1] + e1.[s(w1.c + x + w2.y) + t2]
/// ```
///
/// In matrix form the linear part has rows `(s 0 0; s.w1 s s.w2)`. The
/// engine works with the canonical form `t1 = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Projection {
    t1: Residue,
    t2: Residue,
    s: Residue,
    w1: Residue,
    w2: Residue,
}

impl Projection {
    pub fn new(
        t1: Residue,
        t2: Residue,
        s: Residue,
        w1: Residue,
        w2: Residue,
    ) -> Result<Self, RingError> {
        for r in [t2, s, w1, w2] {
            t1.same_modulus(r)?;
        }
        if !s.is_unit() {
            return Err(RingError::NotAUnit {
                value: s.value(),
                modulus: s.modulus().get(),
            });
        }
        Ok(Projection { t1, t2, s, w1, w2 })
    }

    /// Canonical form with `t1 = 0`.
    pub fn canonical(t2: Residue, s: Residue, w1: Residue, w2: Residue) -> Result<Self, RingError> {
        Projection::new(t2.modulus().residue(0), t2, s, w1, w2)
    }

    pub fn identity(m: Modulus) -> Self {
        Projection {
            t1: m.residue(0),
            t2: m.residue(0),
            s: m.residue(1),
            w1: m.residue(0),
            w2: m.residue(0),
        }
    }

    /// Builds a projection from printed matrix entries: linear rows
    /// `(a 0 0; b a c)` with translation `(t1; t2)`. The parameters are
    /// recovered as `s = a`, `w1 = a^-1.b`, `w2 = a^-1.c`.
    pub fn from_matrix(
        t1: Residue,
        t2: Residue,
        a: Residue,
        b: Residue,
        c: Residue,
    ) -> Result<Self, RingError> {
        for r in [t2, a, b, c] {
            t1.same_modulus(r)?;
        }
        let a_inv = a.inverse().ok_or(RingError::NotAUnit {
            value: a.value(),
            modulus: a.modulus().get(),
        })?;
        Ok(Projection {
            t1,
            t2,
            s: a,
            w1: a_inv * b,
            w2: a_inv * c,
        })
    }

    pub fn t1(self) -> Residue {
        self.t1
    }

    pub fn t2(self) -> Residue {
        self.t2
    }

    pub fn s(self) -> Residue {
        self.s
    }

    pub fn w1(self) -> Residue {
        self.w1
    }

    pub fn w2(self) -> Residue {
        self.w2
    }

    pub fn modulus(self) -> Modulus {
        self.t1.modulus()
    }

    pub fn is_canonical(self) -> bool {
        self.t1.is_zero()
    }

    /// Matrix entries `(s, s.w1, s.w2)` as printed in the 2x3 linear part.
    pub fn matrix_entries(self) -> (Residue, Residue, Residue) {
        (self.s, self.s * self.w1, self.s * self.w2)
    }

    pub fn apply(self, xi: TwoInterval) -> Result<FirstInterval, RingError> {
        self.t1.same_modulus(xi.cantus())?;
        let c = self.s * xi.cantus() + self.t1;
        let x = self.s * (self.w1 * xi.cantus() + xi.downbeat() + self.w2 * xi.upbeat()) + self.t2;
        Ok(FirstInterval { c, x })
    }

    /// The `w2 = 0` restriction acting on `Z_2k[e1]` as a first-species
    /// symmetry: `c + e1.x -> [s.c + t1] + e1.[s(w1.c + x) + t2]`.
    pub fn apply_first(self, eta: FirstInterval) -> Result<FirstInterval, RingError> {
        self.t1.same_modulus(eta.cantus())?;
        let c = self.s * eta.cantus() + self.t1;
        let x = self.s * (self.w1 * eta.cantus() + eta.interval()) + self.t2;
        Ok(FirstInterval { c, x })
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(t1={}, t2={}, s={}, w1={}, w2={})",
            self.t1, self.t2, self.s, self.w1, self.w2
        )
    }
}

/// The polarity of `Z_2k[e1,e2]` at cantus firmus `c` induced by `p = T^u.v`:
///
/// ```text
/// c' + e1.x + e2.y  ->  [v.c' + c(1-v)] + e1.[v.x + u] + e2.[v.y + u]
/// ```
///
/// It exchanges the downbeat-consonant and downbeat-dissonant halves and
/// fixes the tangent space over cantus `c`.
pub fn polarity2_apply(
    p: AffineMap,
    c: Residue,
    xi: TwoInterval,
) -> Result<TwoInterval, RingError> {
    p.translation().same_modulus(c)?;
    p.translation().same_modulus(xi.cantus())?;
    let one = c.modulus().residue(1);
    let (u, v) = (p.translation(), p.linear());
    Ok(TwoInterval {
        c: v * xi.cantus() + c * (one - v),
        x: v * xi.downbeat() + u,
        y: v * xi.upbeat() + u,
    })
}

/// The canonical polarity of `Z_2k[e1]` at cantus firmus `c`: as
/// [`polarity2_apply`] without the upbeat component.
pub fn polarity1_apply(
    p: AffineMap,
    c: Residue,
    eta: FirstInterval,
) -> Result<FirstInterval, RingError> {
    p.translation().same_modulus(c)?;
    p.translation().same_modulus(eta.cantus())?;
    let one = c.modulus().residue(1);
    let (u, v) = (p.translation(), p.linear());
    Ok(FirstInterval {
        c: v * eta.cantus() + c * (one - v),
        x: v * eta.interval() + u,
    })
}
