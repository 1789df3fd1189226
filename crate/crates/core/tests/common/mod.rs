//! 256-bit re-evaluation of the closed-form tail bounds, term by term, with
//! no log-space shortcuts. Inputs are the same f64 parameters.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};

const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Big {
    cc: Consts,
}

impl Big {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants cache"),
        }
    }
    fn f(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, P)
    }
    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, P, RM)
    }
    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, P, RM)
    }
    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, P, RM)
    }
    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, P, RM)
    }
    fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(P, RM)
    }
    fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(P, RM, &mut self.cc)
    }
    fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(P, RM, &mut self.cc)
    }
    fn pos(&self, a: BigFloat) -> BigFloat {
        if a.is_negative() {
            self.f(0.0)
        } else {
            a
        }
    }
    /// `coef * exp(-num / den)`
    fn term(&mut self, coef: &BigFloat, num: &BigFloat, den: &BigFloat) -> BigFloat {
        let e = self.exp(&self.div(num, den).neg());
        self.mul(coef, &e)
    }
    fn to_f64(&mut self, a: &BigFloat) -> f64 {
        let s = a.format(astro_float::Radix::Dec, RM, &mut self.cc).expect("format");
        s.parse().expect("decimal float")
    }
}

pub fn k_armed(b: &mut Big, x: f64, k: f64, t: f64, s: f64, eta: f64) -> f64 {
    let (x, k, t, s, eta) = (b.f(x.max(0.0)), b.f(k), b.f(t), b.f(s), b.f(eta));
    let ln_t = b.ln(&t);
    let s2 = b.mul(&s, &s);
    let two = b.f(2.0);
    // exp(-x^2 / (2 K s^2 T))
    let first = b.term(&b.f(1.0), &b.mul(&x, &x), &b.mul(&b.mul(&two, &k), &b.mul(&s2, &t)));
    let root = b.sqrt(&b.mul(&b.mul(&eta, &t), &ln_t));
    let shift = b.add(&b.mul(&two, &k), &b.mul(&b.mul(&b.f(4.0), &k), &b.mul(&s, &root)));
    let gap = b.pos(b.sub(&x, &shift));
    let den2 = b.mul(&b.mul(&b.f(32.0), &s2), &b.mul(&b.mul(&k, &k), &t));
    let second = b.term(&b.mul(&two, &k), &b.mul(&gap, &gap), &den2);
    let num3 = b.mul(&x, &b.sqrt(&b.mul(&eta, &ln_t)));
    let den3 = b.mul(&b.mul(&b.f(8.0), &s), &b.mul(&k, &b.sqrt(&t)));
    let third = b.term(&b.mul(&b.mul(&k, &k), &t), &num3, &den3);
    let total = b.add(&b.add(&first, &second), &third);
    b.to_f64(&total)
}

pub fn k_armed_opt(b: &mut Big, x: f64, k: f64, t: f64, s: f64, eta1: f64, eta2: f64) -> f64 {
    let big_eta = b.f(eta1.max(eta2));
    let (x, k, t, s, eta1) = (b.f(x.max(0.0)), b.f(k), b.f(t), b.f(s), b.f(eta1));
    let ln_t = b.ln(&t);
    let s2 = b.mul(&s, &s);
    let two_k = b.mul(&b.f(2.0), &k);
    let kt = b.mul(&k, &t);
    let first = b.term(&b.f(1.0), &b.mul(&x, &x), &b.mul(&b.f(8.0), &b.mul(&s2, &kt)));
    let root = b.sqrt(&b.mul(&b.mul(&big_eta, &kt), &ln_t));
    let shift = b.add(&two_k, &b.mul(&b.f(8.0), &b.mul(&s, &root)));
    let gap = b.pos(b.sub(&x, &shift));
    let second = b.term(
        &b.mul(&b.f(4.0), &k),
        &b.mul(&gap, &gap),
        &b.mul(&b.f(128.0), &b.mul(&s2, &kt)),
    );
    let gap3 = b.pos(b.sub(&x, &two_k));
    let num3 = b.mul(&gap3, &b.sqrt(&b.mul(&eta1, &ln_t)));
    let den3 = b.mul(&b.f(16.0), &b.mul(&s, &b.sqrt(&kt)));
    let coef3 = b.mul(&b.mul(&b.f(2.0), &k), &kt);
    let third = b.term(&coef3, &num3, &den3);
    let total = b.add(&b.add(&first, &second), &third);
    b.to_f64(&total)
}

pub fn anytime(b: &mut Big, x: f64, k: f64, t: f64, s: f64, eta: f64) -> f64 {
    let (x, k, t, s, eta) = (b.f(x.max(0.0)), b.f(k), b.f(t), b.f(s), b.f(eta));
    let ln_t = b.ln(&t);
    let s2 = b.mul(&s, &s);
    let two_k = b.mul(&b.f(2.0), &k);
    let kt = b.mul(&k, &t);
    let first = b.term(&b.f(1.0), &b.mul(&x, &x), &b.mul(&b.f(8.0), &b.mul(&s2, &kt)));
    let root = b.sqrt(&b.mul(&b.mul(&b.f(2.0), &b.mul(&eta, &kt)), &ln_t));
    let shift = b.add(&two_k, &b.mul(&b.f(16.0), &b.mul(&s, &root)));
    let gap = b.pos(b.sub(&x, &shift));
    let t2 = b.mul(&t, &t);
    let second = b.term(
        &b.mul(&two_k, &t2),
        &b.mul(&gap, &gap),
        &b.mul(&b.f(512.0), &b.mul(&s2, &kt)),
    );
    let gap3 = b.pos(b.sub(&x, &two_k));
    let num3 = b.mul(&gap3, &b.sqrt(&b.mul(&eta, &ln_t)));
    let den3 = b.mul(&b.f(16.0), &b.mul(&s, &b.sqrt(&kt)));
    let third = b.term(&b.mul(&two_k, &b.mul(&t2, &t)), &num3, &den3);
    let total = b.add(&b.add(&first, &second), &third);
    b.to_f64(&total)
}

pub fn linear(b: &mut Big, x: f64, d: f64, t: f64, s: f64, eta: f64) -> f64 {
    let exp = (2.0 * d + 1.0) as usize;
    let (x, d, t, s, eta) = (b.f(x.max(0.0)), b.f(d), b.f(t), b.f(s), b.f(eta));
    let ln_t = b.ln(&t);
    let s2 = b.mul(&s, &s);
    let dt = b.mul(&d, &t);
    let first = b.term(&b.f(1.0), &b.mul(&x, &x), &b.mul(&b.f(2.0), &b.mul(&s2, &b.mul(&d, &dt))));
    let coef = b.mul(&b.mul(&b.f(2.0), &d), &b.div(&t, &d).powi(exp, P, RM));
    let four_rd = b.mul(&b.f(4.0), &b.sqrt(&d));
    let shift = b.add(
        &b.add(&four_rd, &b.mul(&b.mul(&b.f(32.0), &d), &b.mul(&b.sqrt(&t), &ln_t))),
        &b.mul(&b.mul(&b.f(16.0), &s), &b.mul(&b.sqrt(&b.mul(&eta, &dt)), &ln_t)),
    );
    let gap = b.pos(b.sub(&x, &shift));
    let den2 = b.mul(&b.f(512.0), &b.mul(&b.mul(&s2, &dt), &b.mul(&ln_t, &ln_t)));
    let second = b.term(&coef, &b.mul(&gap, &gap), &den2);
    let gap3 = b.pos(b.sub(&x, &four_rd));
    let den3 = b.mul(&b.mul(&b.f(8.0), &s), &b.mul(&b.sqrt(&dt), &ln_t));
    let third = b.term(&coef, &b.mul(&gap3, &b.sqrt(&eta)), &den3);
    let total = b.add(&b.add(&first, &second), &third);
    b.to_f64(&total)
}

pub fn close(got: f64, want: f64) -> bool {
    if want.abs() < 1e-290 {
        return (got - want).abs() < 1e-290;
    }
    ((got - want) / want).abs() <= 1e-12
}

