//! Arithmetic in the AES field GF(2^8), reduction polynomial x^8 + x^4 + x^3 + x + 1.

/// Multiplication by `x`.
#[inline]
pub const fn xtime(a: u8) -> u8 {
    (a << 1) ^ if a & 0x80 != 0 { 0x1b } else { 0x00 }
}

/// Shift-and-add multiplication.
pub const fn mul(mut a: u8, mut b: u8) -> u8 {
    let mut acc = 0u8;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a = xtime(a);
        b >>= 1;
    }
    acc
}

/// Multiplicative inverse, with `inv(0) = 0` as the s-box construction requires.
pub const fn inv(a: u8) -> u8 {
    // a^254 = a^-1 for nonzero a
    let mut result = 1u8;
    let mut base = a;
    let mut e = 254u8;
    while e != 0 {
        if e & 1 != 0 {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    if a == 0 {
        0
    } else {
        result
    }
}
