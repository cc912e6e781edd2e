//! Dense n x n matrices over F_p, stored row-major as u16 slices.

/// Row-major identity.
pub fn identity(n: usize) -> Vec<u16> {
    let mut m = vec![0u16; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// out = a * b mod p. Accumulates in u64, so any p < 2^16 is safe.
pub fn mul_into(n: usize, p: u16, a: &[u16], b: &[u16], out: &mut [u16]) {
    let p64 = p as u64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc += a[i * n + k] as u64 * b[k * n + j] as u64;
            }
            out[i * n + j] = (acc % p64) as u16;
        }
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Gauss-Jordan inverse; None for singular input.
pub fn inverse(n: usize, p: u16, a: &[u16]) -> Option<Vec<u16>> {
    let p64 = p as u64;
    let mut m: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let mut inv: Vec<u64> = identity(n).iter().map(|&x| x as u64).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * n + col] != 0)?;
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
        }
        let scale = inv_mod(m[col * n + col], p64);
        for j in 0..n {
            m[col * n + j] = m[col * n + j] * scale % p64;
            inv[col * n + j] = inv[col * n + j] * scale % p64;
        }
        for r in 0..n {
            if r == col || m[r * n + col] == 0 {
                continue;
            }
            let f = m[r * n + col];
            for j in 0..n {
                m[r * n + j] = (m[r * n + j] + (p64 - f) * m[col * n + j]) % p64;
                inv[r * n + j] = (inv[r * n + j] + (p64 - f) * inv[col * n + j]) % p64;
            }
        }
    }
    Some(inv.iter().map(|&x| x as u16).collect())
}

// only exercised by the debug-build integrity sweep over SL/PSL elements
#[cfg_attr(not(debug_assertions), allow(dead_code))]
pub fn determinant(n: usize, p: u16, a: &[u16]) -> u16 {
    let p64 = p as u64;
    let mut m: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let mut det = 1u64;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| m[r * n + col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = (p64 - det) % p64;
        }
        det = det * m[col * n + col] % p64;
        let scale = inv_mod(m[col * n + col], p64);
        for r in col + 1..n {
            if m[r * n + col] == 0 {
                continue;
            }
            let f = m[r * n + col] * scale % p64;
            for j in col..n {
                m[r * n + j] = (m[r * n + j] + (p64 - f) * m[col * n + j]) % p64;
            }
        }
    }
    det as u16
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest primitive root mod an odd prime p (returns 1 for p = 2).
pub fn primitive_root(p: u16) -> u16 {
    if p == 2 {
        return 1;
    }
    let phi = (p - 1) as u64;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    for g in 2..p as u64 {
        if factors.iter().all(|&q| pow_mod(g, phi / q, p as u64) != 1) {
            return g as u16;
        }
    }
    unreachable!("every prime has a primitive root");
}

/// Scalars lambda in F_p* with lambda^n = 1; these are the scalar
/// matrices inside SL(n, p).
pub fn scalar_roots(n: u32, p: u16) -> Vec<u16> {
    (1..p as u64).filter(|&l| pow_mod(l, n as u64, p as u64) == 1).map(|l| l as u16).collect()
}

/// Canonical representative of the scalar orbit {lambda * m}: the
/// lexicographically least rewrite. For n = 2 and odd p this picks the
/// sign making the first nonzero entry at most (p-1)/2.
pub fn scalar_orbit_min_into(p: u16, roots: &[u16], m: &mut [u16], scratch: &mut [u16]) {
    let p64 = p as u64;
    for &l in roots {
        if l == 1 {
            continue;
        }
        for (s, &e) in scratch.iter_mut().zip(m.iter()) {
            *s = (l as u64 * e as u64 % p64) as u16;
        }
        if scratch[..m.len()] < *m {
            m.copy_from_slice(&scratch[..m.len()]);
        }
    }
}
