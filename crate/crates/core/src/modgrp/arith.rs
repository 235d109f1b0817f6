//! Small-integer number theory for moduli that fit in a machine word.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

fn is_primitive_root(g: u64, p: u64) -> bool {
    factorize(p - 1).iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
}

/// Generators of the cyclic factors of (ℤ/p^e)ˣ, as residues mod p^e.
fn unit_generators_prime_power(p: u64, e: u32) -> Vec<u64> {
    let q = p.pow(e);
    if p == 2 {
        return match e {
            1 => vec![],
            2 => vec![3],
            _ => vec![q - 1, 5],
        };
    }
    let mut g = (2..p).find(|&g| is_primitive_root(g, p)).unwrap_or(1);
    // A primitive root mod p lifts to every p^e unless g^(p-1) ≡ 1 mod p².
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    vec![g % q]
}

/// One generator per cyclic factor of (ℤ/m)ˣ, coming from the prime-power
/// components and lifted by the Chinese remainder theorem (≡ 1 on the other components).
pub fn unit_group_generators(m: u64) -> Vec<u64> {
    let parts: Vec<(u64, u64)> = factorize(m).into_iter().map(|(p, e)| (p, p.pow(e))).collect();
    let mut out = Vec::new();
    for (idx, &(p, q)) in parts.iter().enumerate() {
        let e = q.ilog(p);
        for g in unit_generators_prime_power(p, e) {
            // x ≡ g (mod q), x ≡ 1 (mod m/q)
            let rest = m / q;
            let x = if rest == 1 {
                g
            } else {
                let inv = inv_mod(rest % q, q).expect("coprime components");
                // x = 1 + rest * k with rest*k ≡ g - 1 (mod q)
                let k = ((g + q - 1) % q) as u128 * inv as u128 % q as u128;
                (1 + rest as u128 * k) as u64 % m
            };
            debug_assert_eq!(x % q, g % q);
            debug_assert!(parts.iter().enumerate().all(|(j, &(_, qj))| j == idx || x % qj == 1 % qj));
            out.push(x);
        }
    }
    out
}
