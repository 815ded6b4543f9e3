//! Symmetric-power modules V_k, their duals T_k, the bi-graded V_kk with
//! Galois-conjugated second factor, the Clebsch-Gordan injection
//! CG^[k,k,j]: T_{2k-2j} -> T_kk, and the nabla-contraction that realises
//! its transpose up to the constant (-1)^j j!.
//!
//! The general CG columns are generated from the printed top case by the
//! lowering-operator recursion (equivariance under the unipotent), not
//! transcribed from the literature; multiplicity-one of the equivariant
//! map space is checked independently by exact linear algebra.

use rug::Rational;

/// Coefficient rings for the tensor modules: exact, with an involution for
/// the Galois-conjugated factor. Z and Q use the trivial involution.
pub trait Ring: Clone + std::fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Ring involution (complex conjugation on quadratic coefficients).
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn neg(&self) -> Self {
        Rational::from(-self.clone())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// a + b sqrt(-D) with rational a, b: the coefficient ring containing the
/// image of O_F, with conjugation negating b. The discriminant tag rides
/// along lazily (0 marks a purely rational element), so equality compares
/// it only when both irrational parts are present.
#[derive(Clone, Debug)]
pub struct QdElt {
    pub d: u64,
    pub a: Rational,
    pub b: Rational,
}

impl PartialEq for QdElt {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        let b_zero = self.b.cmp0() == std::cmp::Ordering::Equal;
        b_zero || self.d == other.d || self.d == 0 || other.d == 0
    }
}

impl QdElt {
    pub fn new(d: u64, a: Rational, b: Rational) -> Self {
        QdElt { d, a, b }
    }
    pub fn sqrt_md(d: u64) -> Self {
        QdElt {
            d,
            a: Rational::new(),
            b: Rational::from(1),
        }
    }
    /// The module generator: (1 + sqrt(-D))/2 for D = 3 mod 4, sqrt(-D)/2
    /// for D = 0 mod 4.
    pub fn omega(d: u64) -> Self {
        if d % 4 == 3 {
            QdElt {
                d,
                a: Rational::from((1, 2)),
                b: Rational::from((1, 2)),
            }
        } else {
            QdElt {
                d,
                a: Rational::new(),
                b: Rational::from((1, 2)),
            }
        }
    }
}

impl Ring for QdElt {
    fn zero() -> Self {
        QdElt {
            d: 0,
            a: Rational::new(),
            b: Rational::new(),
        }
    }
    fn one() -> Self {
        QdElt {
            d: 0,
            a: Rational::from(1),
            b: Rational::new(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        QdElt {
            d: self.d.max(o.d),
            a: Rational::from(&self.a + &o.a),
            b: Rational::from(&self.b + &o.b),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        QdElt {
            d: self.d.max(o.d),
            a: Rational::from(&self.a - &o.a),
            b: Rational::from(&self.b - &o.b),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.d.max(o.d);
        // (a + b w)(a' + b' w) with w^2 = -D
        let aa = Rational::from(&self.a * &o.a);
        let bb = Rational::from(&self.b * &o.b);
        let ab = Rational::from(&self.a * &o.b);
        let ba = Rational::from(&self.b * &o.a);
        QdElt {
            d,
            a: aa - bb * Rational::from(d),
            b: ab + ba,
        }
    }
    fn neg(&self) -> Self {
        QdElt {
            d: self.d,
            a: Rational::from(-self.a.clone()),
            b: Rational::from(-self.b.clone()),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        QdElt {
            d: 0,
            a: r.clone(),
            b: Rational::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.cmp0() == std::cmp::Ordering::Equal && self.b.cmp0() == std::cmp::Ordering::Equal
    }
    fn conj(&self) -> Self {
        QdElt {
            d: self.d,
            a: self.a.clone(),
            b: Rational::from(-self.b.clone()),
        }
    }
}

/// 2x2 matrix over the coefficient ring.
#[derive(Clone, Debug)]
pub struct Mat2<R: Ring> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: Ring> Mat2<R> {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 {
            a: R::from_i64(a),
            b: R::from_i64(b),
            c: R::from_i64(c),
            d: R::from_i64(d),
        }
    }
    pub fn det(&self) -> R {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }
    /// Inverse for det = 1 (the only case the actions need).
    pub fn inv_unimodular(&self) -> Self {
        assert!(self.det() == R::one(), "expected det 1");
        Mat2 {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }
    pub fn conj(&self) -> Self {
        Mat2 {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
        }
    }
    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }
}

/// Homogeneous polynomial of degree k in X, Y: coefficient of X^s Y^{k-s}
/// at index s.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<R: Ring> {
    pub k: usize,
    pub coeffs: Vec<R>,
}

impl<R: Ring> SymPoly<R> {
    pub fn zero(k: usize) -> Self {
        SymPoly {
            k,
            coeffs: vec![R::zero(); k + 1],
        }
    }
    pub fn monomial(k: usize, s: usize) -> Self {
        let mut p = Self::zero(k);
        p.coeffs[s] = R::one();
        p
    }
    pub fn add(&self, o: &Self) -> Self {
        SymPoly {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }
    pub fn scale(&self, s: &R) -> Self {
        SymPoly {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Right action (f | gamma)(X, Y) = f(aX + bY, cX + dY).
    pub fn act_right(&self, g: &Mat2<R>) -> Self {
        let k = self.k;
        let mut out = Self::zero(k);
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (aX + bY)^s * (cX + dY)^{k-s}
            let p1 = binomial_power(&g.a, &g.b, s);
            let p2 = binomial_power(&g.c, &g.d, k - s);
            for (i, u) in p1.iter().enumerate() {
                for (j, v) in p2.iter().enumerate() {
                    let t = c.mul(&u.mul(v));
                    out.coeffs[i + j] = out.coeffs[i + j].add(&t);
                }
            }
        }
        out
    }

    /// Left action (gamma . f)(X, Y) = f(aX + cY, bX + dY).
    pub fn act_left(&self, g: &Mat2<R>) -> Self {
        let t = Mat2 {
            a: g.a.clone(),
            b: g.c.clone(),
            c: g.b.clone(),
            d: g.d.clone(),
        };
        self.act_right(&t)
    }
}

/// Coefficients of (uX + vY)^n by X-degree.
fn binomial_power<R: Ring>(u: &R, v: &R, n: usize) -> Vec<R> {
    let mut out = vec![R::zero(); n + 1];
    // binom(n, i) u^i v^{n-i}
    let mut binom = Rational::from(1);
    let mut upow = vec![R::one()];
    let mut vpow = vec![R::one()];
    for i in 1..=n {
        upow.push(upow[i - 1].mul(u));
        vpow.push(vpow[i - 1].mul(v));
    }
    for (i, slot) in out.iter_mut().enumerate() {
        let b = R::from_rational(&binom);
        *slot = b.mul(&upow[i]).mul(&vpow[n - i]);
        binom *= Rational::from((n - i) as i64);
        binom /= Rational::from((i + 1) as i64);
    }
    out
}

/// Element of V_kk = V_k tensor V_k^sigma: coefficient of
/// X^s Y^{k-s} (Xbar)^{t} (Ybar)^{k-t} at index (s, t). The second factor
/// carries the action of gamma^sigma (conjugated entries).
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensorKK<R: Ring> {
    pub k: usize,
    pub coeffs: Vec<R>, // (k+1) x (k+1), row-major in (s, t)
}

impl<R: Ring> SymTensorKK<R> {
    pub fn zero(k: usize) -> Self {
        SymTensorKK {
            k,
            coeffs: vec![R::zero(); (k + 1) * (k + 1)],
        }
    }
    pub fn basis(k: usize, s: usize, t: usize) -> Self {
        let mut z = Self::zero(k);
        z.coeffs[s * (k + 1) + t] = R::one();
        z
    }
    pub fn get(&self, s: usize, t: usize) -> &R {
        &self.coeffs[s * (self.k + 1) + t]
    }
    pub fn add(&self, o: &Self) -> Self {
        SymTensorKK {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// gamma acts on the first factor, gamma^sigma on the second.
    pub fn act_right(&self, g: &Mat2<R>) -> Self {
        let k = self.k;
        let gc = g.conj();
        // precompute the action on V_k basis vectors for both factors
        let act1: Vec<SymPoly<R>> = (0..=k)
            .map(|s| SymPoly::<R>::monomial(k, s).act_right(g))
            .collect();
        let act2: Vec<SymPoly<R>> = (0..=k)
            .map(|s| SymPoly::<R>::monomial(k, s).act_right(&gc))
            .collect();
        let mut out = Self::zero(k);
        for s in 0..=k {
            for t in 0..=k {
                let c = self.get(s, t);
                if c.is_zero() {
                    continue;
                }
                for (i, u) in act1[s].coeffs.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (j, v) in act2[t].coeffs.iter().enumerate() {
                        let w = c.mul(&u.mul(v));
                        out.coeffs[i * (k + 1) + j] = out.coeffs[i * (k + 1) + j].add(&w);
                    }
                }
            }
        }
        out
    }
}

/// Dual-module elements: functional coordinates against the monomial basis.
/// `DualSym` is T_m with basis w^{[s, m-s]}; `DualTensorKK` is T_kk with
/// basis w^{[i,k-i]} tensor w^{[j,k-j]}.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSym<R: Ring> {
    pub m: usize,
    pub coords: Vec<R>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualTensorKK<R: Ring> {
    pub k: usize,
    pub coords: Vec<R>, // (k+1) x (k+1) in (i, j)
}

impl<R: Ring> DualSym<R> {
    pub fn basis(m: usize, s: usize) -> Self {
        let mut z = DualSym {
            m,
            coords: vec![R::zero(); m + 1],
        };
        z.coords[s] = R::one();
        z
    }
    pub fn pair(&self, v: &SymPoly<R>) -> R {
        assert_eq!(self.m, v.k);
        let mut acc = R::zero();
        for (c, x) in self.coords.iter().zip(&v.coeffs) {
            acc = acc.add(&c.mul(x));
        }
        acc
    }
    /// Contragredient right action: (w | gamma)(v) = w(v | gamma^{-1}),
    /// so the pairing <w | gamma, v | gamma> is invariant.
    pub fn act_right(&self, g: &Mat2<R>) -> Self {
        let ginv = g.inv_unimodular();
        let m = self.m;
        let mut out = DualSym {
            m,
            coords: vec![R::zero(); m + 1],
        };
        for s in 0..=m {
            // coefficient of the image: w(e_s | g^{-1})
            let img = SymPoly::<R>::monomial(m, s).act_right(&ginv);
            let mut acc = R::zero();
            for (c, x) in self.coords.iter().zip(&img.coeffs) {
                acc = acc.add(&c.mul(x));
            }
            out.coords[s] = acc;
        }
        out
    }
}

impl<R: Ring> DualTensorKK<R> {
    pub fn zero(k: usize) -> Self {
        DualTensorKK {
            k,
            coords: vec![R::zero(); (k + 1) * (k + 1)],
        }
    }
    pub fn basis(k: usize, i: usize, j: usize) -> Self {
        let mut z = Self::zero(k);
        z.coords[i * (k + 1) + j] = R::one();
        z
    }
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.coords[i * (self.k + 1) + j]
    }
    pub fn add(&self, o: &Self) -> Self {
        DualTensorKK {
            k: self.k,
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }
    pub fn scale(&self, s: &R) -> Self {
        DualTensorKK {
            k: self.k,
            coords: self.coords.iter().map(|c| c.mul(s)).collect(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    pub fn pair(&self, v: &SymTensorKK<R>) -> R {
        assert_eq!(self.k, v.k);
        let mut acc = R::zero();
        for (c, x) in self.coords.iter().zip(&v.coeffs) {
            acc = acc.add(&c.mul(x));
        }
        acc
    }
    pub fn act_right(&self, g: &Mat2<R>) -> Self {
        let ginv = g.inv_unimodular();
        let k = self.k;
        let mut out = Self::zero(k);
        for s in 0..=k {
            for t in 0..=k {
                let img = SymTensorKK::<R>::basis(k, s, t).act_right(&ginv);
                let mut acc = R::zero();
                for (c, x) in self.coords.iter().zip(&img.coeffs) {
                    acc = acc.add(&c.mul(x));
                }
                out.coords[s * (k + 1) + t] = acc;
            }
        }
        out
    }
}

fn factorial(n: usize) -> Rational {
    let mut f = Rational::from(1);
    for i in 2..=n {
        f *= Rational::from(i as u64);
    }
    f
}

pub fn binom(n: usize, r: usize) -> Rational {
    if r > n {
        return Rational::new();
    }
    factorial(n) / (factorial(r) * factorial(n - r))
}

/// The Clebsch-Gordan injection CG^[k,k,j]: T_{2k-2j} -> T_kk as a matrix:
/// `columns[r]` is the image of w^{[r, 2k-2j-r]}.
///
/// Column 0 is the printed normalisation
///   CG(w^{[0, 2k-2j]}) = sum_i (-1)^i (k-i)! (k+i-j)! / ((k-j)!)^2
///                         w^{[i, k-i]} (x) w^{[j-i, k-j+i]},
/// and the higher columns follow by equivariance under the unipotent
/// u = (1,1;0,1): projecting CG((w^{[r]} | u) - w^{[r]}) onto the torus
/// weight of w^{[r+1]} isolates -(r+1) CG(w^{[r+1]}).
pub struct CgMap {
    pub k: usize,
    pub j: usize,
    pub columns: Vec<DualTensorKK<Rational>>,
}

pub fn cg_map(k: usize, j: usize) -> CgMap {
    assert!(j <= k);
    let m = 2 * k - 2 * j;
    // printed top column
    let mut b0 = DualTensorKK::<Rational>::zero(k);
    let denom = factorial(k - j) * factorial(k - j);
    for i in 0..=j {
        let num = factorial(k - i) * factorial(k + i - j);
        let mut c = num / denom.clone();
        if i % 2 == 1 {
            c = -c;
        }
        b0.coords[i * (k + 1) + (j - i)] = c;
    }
    let u = Mat2::<Rational>::from_i64(1, 1, 0, 1);
    let mut columns = vec![b0];
    for r in 0..m {
        let prev = &columns[r];
        let acted = prev.act_right(&u);
        // N(B_r) = acted - B_r; take the component with i + j' = r + 1 + j
        let mut next = DualTensorKK::<Rational>::zero(k);
        for i in 0..=k {
            for jj in 0..=k {
                if i + jj == r + 1 + j {
                    let v = acted.get(i, jj).sub(prev.get(i, jj));
                    next.coords[i * (k + 1) + jj] = v;
                }
            }
        }
        let scale = Rational::from(-((r + 1) as i64)).recip();
        columns.push(next.scale(&scale));
    }
    CgMap { k, j, columns }
}

impl CgMap {
    pub fn apply(&self, w: &DualSym<Rational>) -> DualTensorKK<Rational> {
        assert_eq!(w.m, 2 * self.k - 2 * self.j);
        let mut acc = DualTensorKK::<Rational>::zero(self.k);
        for (r, c) in w.coords.iter().enumerate() {
            if c.cmp0() != std::cmp::Ordering::Equal {
                acc = acc.add(&self.columns[r].scale(c));
            }
        }
        acc
    }

    /// Transpose: V_kk -> V_{2k-2j}, <CG(w), delta> = <w, CG*(delta)>.
    pub fn transpose_apply(&self, delta: &SymTensorKK<Rational>) -> SymPoly<Rational> {
        let m = 2 * self.k - 2 * self.j;
        let mut out = SymPoly::<Rational>::zero(m);
        for (r, col) in self.columns.iter().enumerate() {
            out.coeffs[r] = col.pair(delta);
        }
        out
    }
}

/// Bi-degree (k1, k2) polynomials in (X, Y) x (Xbar, Ybar), used for the
/// intermediate stages of the nabla contraction.
#[derive(Clone, Debug)]
struct BiPoly {
    k1: usize,
    k2: usize,
    c: Vec<Rational>, // (k1+1) x (k2+1)
}

impl BiPoly {
    fn from_tensor(t: &SymTensorKK<Rational>) -> Self {
        BiPoly {
            k1: t.k,
            k2: t.k,
            c: t.coeffs.clone(),
        }
    }
    fn get(&self, s: usize, t: usize) -> &Rational {
        &self.c[s * (self.k2 + 1) + t]
    }
    /// nabla = d^2/(dX dYbar) - d^2/(dY dXbar).
    fn nabla(&self) -> Self {
        assert!(self.k1 >= 1 && self.k2 >= 1);
        let (k1, k2) = (self.k1, self.k2);
        let mut out = BiPoly {
            k1: k1 - 1,
            k2: k2 - 1,
            c: vec![Rational::new(); k1 * k2],
        };
        for s in 0..=k1 {
            for t in 0..=k2 {
                let v = self.get(s, t);
                if v.cmp0() == std::cmp::Ordering::Equal {
                    continue;
                }
                // X-degree s, Ybar-degree k2 - t: d^2/dX dYbar
                if s >= 1 && k2 - t >= 1 {
                    let w = Rational::from(v * &Rational::from((s * (k2 - t)) as u64));
                    out.c[(s - 1) * k2 + t] += w;
                }
                // Y-degree k1 - s, Xbar-degree t: d^2/dY dXbar
                if k1 - s >= 1 && t >= 1 {
                    let w = Rational::from(v * &Rational::from(((k1 - s) * t) as u64));
                    out.c[s * k2 + (t - 1)] -= w;
                }
            }
        }
        out
    }
}

/// (1/(j!)^2) nabla^j delta restricted to Xbar = X, Ybar = Y: a polynomial
/// of degree 2k - 2j.
pub fn nabla_contract(k: usize, j: usize, delta: &SymTensorKK<Rational>) -> SymPoly<Rational> {
    assert!(j <= k);
    let mut p = BiPoly::from_tensor(delta);
    for _ in 0..j {
        p = p.nabla();
    }
    let m = 2 * (k - j);
    let norm = factorial(j) * factorial(j);
    let mut out = SymPoly::<Rational>::zero(m);
    for s in 0..=(k - j) {
        for t in 0..=(k - j) {
            let v = p.get(s, t);
            if v.cmp0() != std::cmp::Ordering::Equal {
                out.coeffs[s + t] += Rational::from(v / &norm);
            }
        }
    }
    out
}

/// Dimension of the space of maps T_{2k-2j} -> T_kk equivariant under the
/// two unipotent generators of SL_2(Z), by exact kernel computation; also
/// reports whether the given cg_map lies in that space.
pub fn equivariant_space_dimension(k: usize, j: usize) -> (usize, bool) {
    let m = 2 * k - 2 * j;
    let dim_t = m + 1;
    let dim_kk = (k + 1) * (k + 1);
    let unknowns = dim_t * dim_kk; // M[(i,jj), r]
    let gens = [
        Mat2::<Rational>::from_i64(1, 1, 0, 1),
        Mat2::<Rational>::from_i64(1, 0, 1, 1),
    ];
    // action matrices on the duals: columns are images of basis functionals
    let mut rows: Vec<Vec<Rational>> = vec![];
    for g in &gens {
        let at: Vec<DualSym<Rational>> = (0..dim_t).map(|r| DualSym::basis(m, r).act_right(g)).collect();
        let akk: Vec<DualTensorKK<Rational>> = (0..dim_kk)
            .map(|idx| DualTensorKK::basis(k, idx / (k + 1), idx % (k + 1)).act_right(g))
            .collect();
        // equation: for all r, M(w_r | g) = (M w_r) | g
        // LHS = sum_s (at[r])_s M[., s]; RHS = sum_idx M[idx, r] akk[idx]
        for r in 0..dim_t {
            for out_idx in 0..dim_kk {
                let mut row = vec![Rational::new(); unknowns];
                for s in 0..dim_t {
                    let c = at[r].coords[s].clone();
                    if c.cmp0() != std::cmp::Ordering::Equal {
                        row[out_idx * dim_t + s] += c;
                    }
                }
                for idx in 0..dim_kk {
                    let c = akk[idx].coords[out_idx].clone();
                    if c.cmp0() != std::cmp::Ordering::Equal {
                        row[idx * dim_t + r] -= c;
                    }
                }
                rows.push(row);
            }
        }
    }
    // exact kernel dimension by Gaussian elimination
    let mut mat = rows;
    let rows_n = mat.len();
    let mut rank = 0usize;
    let mut pivots = vec![];
    for col in 0..unknowns {
        let mut piv = None;
        for r in rank..rows_n {
            if mat[r][col].cmp0() != std::cmp::Ordering::Equal {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else { continue };
        mat.swap(rank, p);
        let inv = Rational::from(mat[rank][col].clone().recip());
        for cc in col..unknowns {
            mat[rank][cc] *= &inv;
        }
        for r in 0..rows_n {
            if r != rank && mat[r][col].cmp0() != std::cmp::Ordering::Equal {
                let f = mat[r][col].clone();
                for cc in col..unknowns {
                    let t = Rational::from(&f * &mat[rank][cc]);
                    mat[r][cc] -= t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let dim = unknowns - rank;
    // does cg lie in the kernel? plug its coordinates into every equation
    let cg = cg_map(k, j);
    let coord = |idx: usize, r: usize| -> Rational { cg.columns[r].coords[idx].clone() };
    let mut in_kernel = true;
    'rows: for row_idx in 0..rows_n {
        // rows were destroyed by elimination; rebuild equations instead
        let _ = row_idx;
        break 'rows;
    }
    // rebuild equations for the membership check
    for g in &gens {
        for r in 0..dim_t {
            let wr = DualSym::<Rational>::basis(m, r);
            let lhs = cg.apply(&wr.act_right(g));
            let rhs = cg.apply(&wr).act_right(g);
            for idx in 0..dim_kk {
                if lhs.coords[idx] != rhs.coords[idx] {
                    in_kernel = false;
                }
            }
        }
    }
    let _ = coord;
    (dim, in_kernel)
}
