//! Brute-force searches over GF(2^m), m <= 4.

/// Bit-polynomial field with the same moduli as the library uses.
#[derive(Clone, Copy, Debug)]
pub struct Gf {
    pub m: u32,
    modulus: u32,
}

impl Gf {
    pub fn new(m: u32) -> Gf {
        let modulus = [0, 0b11, 0b111, 0b1011, 0b10011][m as usize];
        Gf { m, modulus }
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut r = 0u32;
        for i in 0..self.m {
            if b >> i & 1 == 1 {
                r ^= a << i;
            }
        }
        for i in (self.m..2 * self.m).rev() {
            if r >> i & 1 == 1 {
                r ^= self.modulus << (i - self.m);
            }
        }
        r
    }

    pub fn inv(&self, a: u32) -> u32 {
        (1..self.size()).find(|&x| self.mul(a, x) == 1).expect("nonzero element")
    }

    pub fn trace(&self, a: u32) -> u32 {
        let mut s = 0;
        let mut x = a;
        for _ in 0..self.m {
            s ^= x;
            x = self.mul(x, x);
        }
        s
    }

    /// All vectors of k^n.
    pub fn vectors(&self, n: usize) -> Vec<Vec<u32>> {
        let q = self.size() as usize;
        (0..q.pow(n as u32))
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let c = (i % q) as u32;
                        i /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    pub fn dot(&self, x: &[u32], m: &[Vec<u32>], y: &[u32]) -> u32 {
        let mut s = 0;
        for (i, r) in m.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                s ^= self.mul(self.mul(x[i], *c), y[j]);
            }
        }
        s
    }

    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let mut a: Vec<Vec<u32>> = rows.to_vec();
        let cols = a.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            let iv = self.inv(a[r][c]);
            let piv: Vec<u32> = a[r].iter().map(|x| self.mul(*x, iv)).collect();
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] ^= self.mul(f, piv[j]);
                    }
                }
            }
            a[r] = piv;
            r += 1;
        }
        r
    }
}

/// A quadratic space given by evaluation of q and of the alternating
/// pairing b on coordinate vectors.
pub struct Space<'a> {
    pub k: Gf,
    pub n: usize,
    pub q: &'a dyn Fn(&[u32]) -> u32,
    pub b: &'a dyn Fn(&[u32], &[u32]) -> u32,
}

/// Exhaustive search for a Lagrangian: an n/2-dimensional subspace on which
/// q and b vanish. Subspaces are built in echelon form so each is visited
/// once.
pub fn has_lagrangian(s: &Space) -> bool {
    if s.n % 2 == 1 {
        return false;
    }
    let all = s.k.vectors(s.n);
    let isotropic: Vec<&Vec<u32>> = all.iter().filter(|v| v.iter().any(|c| *c != 0) && (s.q)(v) == 0).collect();
    fn lead(v: &[u32]) -> usize {
        v.iter().rposition(|c| *c != 0).expect("nonzero vector")
    }
    fn go(s: &Space, cand: &[&Vec<u32>], basis: &mut Vec<Vec<u32>>) -> bool {
        if basis.len() == s.n / 2 {
            return true;
        }
        let floor = basis.last().map(|v| lead(v));
        for v in cand {
            let l = lead(v);
            if floor.is_some_and(|f| l <= f) || v[l] != 1 {
                continue;
            }
            // echelon: zero at the leads of the chosen vectors
            if basis.iter().any(|u| v[lead(u)] != 0) {
                continue;
            }
            if basis.iter().any(|u| (s.b)(u, v) != 0) {
                continue;
            }
            basis.push((*v).clone());
            if go(s, cand, basis) {
                return true;
            }
            basis.pop();
        }
        false
    }
    go(s, &isotropic, &mut Vec::new())
}

/// Subspaces of k^n as lists of basis vectors (reduced echelon form).
pub fn subspaces(k: Gf, n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        // free positions: in row r, columns after pivot r that are not pivots
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let q = k.size() as usize;
        for mut code in 0..q.pow(free.len() as u32) {
            let mut rows: Vec<Vec<u32>> = pivots
                .iter()
                .map(|&p| {
                    let mut r = vec![0; n];
                    r[p] = 1;
                    r
                })
                .collect();
            for &(r, c) in &free {
                rows[r][c] = (code % q) as u32;
                code /= q;
            }
            out.push(rows);
        }
    }
    out
}

/// Metabolicity of a separated space: q on V with values alpha on the
/// basis, q' on W with values beta, pairing b(w_j, v_i) = p[j][i]. A
/// homogeneous Lagrangian is U ⊕ U^0 with q = 0 on U and q' = 0 on U^0.
pub fn separated_has_lagrangian(k: Gf, alpha: &[u32], beta: &[u32], p: &[Vec<u32>]) -> bool {
    let n = alpha.len();
    let ts = |vals: &[u32], x: &[u32]| x.iter().zip(vals).fold(0, |s, (c, a)| s ^ k.mul(k.mul(*c, *c), *a));
    let ws = k.vectors(n);
    subspaces(k, n).iter().any(|u| {
        if u.iter().any(|v| ts(alpha, v) != 0) {
            return false;
        }
        ws.iter().all(|w| {
            let pairs = u.iter().any(|v| {
                let mut s = 0;
                for j in 0..n {
                    for i in 0..n {
                        s ^= k.mul(k.mul(w[j], p[j][i]), v[i]);
                    }
                }
                s != 0
            });
            pairs || ts(beta, w) == 0
        })
    })
}
