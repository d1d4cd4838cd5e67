use crate::field::Domain;

/// Polynomials over a [`Domain`], as a [`Domain`] in their own right, so that
/// towers like `F[x][z]` can be nested. Elements are low-to-high coefficient
/// vectors without trailing zeros.
#[derive(Clone, Debug)]
pub struct PolyRing<D: Domain> {
    base: D,
}

impl<D: Domain> PolyRing<D> {
    pub fn new(base: D) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &D {
        &self.base
    }

    pub fn normalize(&self, mut v: Vec<D::Elem>) -> Vec<D::Elem> {
        while v.last().is_some_and(|c| self.base.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub fn constant(&self, c: D::Elem) -> Vec<D::Elem> {
        self.normalize(vec![c])
    }

    pub fn scale(&self, a: &[D::Elem], c: &D::Elem) -> Vec<D::Elem> {
        self.normalize(a.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn eval(&self, a: &[D::Elem], x: &D::Elem) -> D::Elem {
        a.iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }
}

impl<D: Domain> Domain for PolyRing<D> {
    type Elem = Vec<D::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }

    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.base.add(o, s);
        }
        self.normalize(out)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let d = &self.base;
        let mut out = vec![d.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if d.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = d.add(&out[i + j], &d.mul(x, y));
            }
        }
        self.normalize(out)
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let d = &self.base;
        let lb = b.last()?;
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let mut r = a.clone();
        let mut q = vec![d.zero(); a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + b.len() - 1];
            if d.is_zero(top) {
                continue;
            }
            let c = d.exact_div(top, lb)?;
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = d.add(&r[k + j], &d.mul(&c, bj));
            }
            q[k] = c;
        }
        r.iter().all(|c| d.is_zero(c)).then(|| self.normalize(q))
    }
}

fn degree<D: Domain>(d: &D, a: &[D::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !d.is_zero(c))
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
fn pseudo_rem<D: Domain>(d: &D, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() - db;
    while let Some(dr) = degree(d, &r) {
        if dr < db {
            break;
        }
        r.truncate(dr + 1);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = d.mul(c, lb);
        }
        for (j, bj) in b.iter().enumerate() {
            let t = d.mul(&lr, bj);
            r[dr - db + j] = d.add(&r[dr - db + j], &t);
        }
        e -= 1;
    }
    let scale = d.pow(lb, e as u64);
    let mut r: Vec<D::Elem> = r.iter().map(|c| d.mul(c, &scale)).collect();
    while r.last().is_some_and(|c| d.is_zero(c)) {
        r.pop();
    }
    r
}

/// Resultant of two nonzero polynomials (low-to-high coefficients, no
/// trailing zeros) by the subresultant remainder sequence. All divisions are
/// exact in `D`; signs are irrelevant in characteristic 2. Returns zero if
/// either input is zero.
pub fn resultant<D: Domain>(d: &D, a: &[D::Elem], b: &[D::Elem]) -> D::Elem {
    if a.is_empty() || b.is_empty() {
        return d.zero();
    }
    let (mut a, mut b) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    if b.len() == 1 {
        return d.pow(&b[0], (a.len() - 1) as u64);
    }
    let mut g = d.one();
    let mut h = d.one();
    loop {
        let delta = (a.len() - b.len()) as u64;
        let r = pseudo_rem(d, &a, &b);
        if r.is_empty() {
            return d.zero();
        }
        let denom = d.mul(&g, &d.pow(&h, delta));
        a = b;
        b = r
            .iter()
            .map(|c| d.exact_div(c, &denom).expect("subresultant division is exact"))
            .collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            d.exact_div(&d.pow(&g, delta), &d.pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
        if b.len() == 1 {
            let da = (a.len() - 1) as u64;
            let num = d.pow(&b[0], da);
            return d
                .exact_div(&num, &d.pow(&h, da - 1))
                .expect("subresultant division is exact");
        }
    }
}
