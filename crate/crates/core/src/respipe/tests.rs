use super::*;
use crate::families::twist_apoly_explicit;
use num_bigint::BigInt;
use num_rational::BigRational;

#[test]
fn relation_polynomials_transcription() {
    let fw = whitehead_relation();
    assert_eq!(fw.num_terms(), 16);
    assert_eq!(fw.deg(VAR_T), 3);
    assert_eq!(fw.deg(VAR_U), 4);
    assert_eq!(fw.deg(VAR_M), 4);
    assert_eq!(fw.deg(VAR_L), 0);

    let cap = longitude_relation();
    assert_eq!(cap.num_terms(), 12);
    assert_eq!(cap.deg(VAR_L), 1);
    // coefficient of L is M^2 u^3
    let l_coeff = cap.coeff_of(VAR_L, 1);
    assert_eq!(l_coeff, MPoly4::from_i64_terms(&[(1, [0, 2, 0, 3])]));

    let (num, den) = gluing_fraction();
    assert_eq!(num.num_terms(), 11);
    assert_eq!(den, MPoly4::from_i64_terms(&[(1, [0, 3, 0, 2])]));
}

#[test]
fn whitehead_relation_nonzero_at_m_one() {
    let fw = whitehead_relation();
    let at_one = fw.eval_lm(&BigInt::from(1), &BigInt::from(1));
    assert!(!at_one.is_zero());
}

fn eval4_rational(p: &MPoly4, m: &BigRational, t: &BigRational, u: &BigRational) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(0));
    for (e, c) in p.terms() {
        assert_eq!(e[VAR_L], 0);
        let term = BigRational::from_integer(c.clone())
            * m.pow(e[VAR_M] as i32)
            * t.pow(e[VAR_T] as i32)
            * u.pow(e[VAR_U] as i32);
        acc += term;
    }
    acc
}

#[test]
fn companion_substitution_matches_rational_oracle() {
    // evaluate the cleared polynomial and the direct rational substitution at
    // integer points and compare, tracking the cleared denominator power
    let c_tilde = twist_apoly_explicit(-1);
    for (r, mi, ti, ui) in [
        (0i64, 2i64, 3i64, 5i64),
        (0, -3, 2, 7),
        (1, 2, -5, 3),
        (-2, 3, 4, -2),
        (3, -2, -3, -5),
    ] {
        let raw = companion_substitution_raw(&c_tilde, r);
        let m = BigRational::from_integer(BigInt::from(mi));
        let t = BigRational::from_integer(BigInt::from(ti));
        let u = BigRational::from_integer(BigInt::from(ui));
        let (num, den) = gluing_fraction();
        let v = eval4_rational(&num, &m, &t, &u) / eval4_rational(&den, &m, &t, &u);
        let mut direct = BigRational::from_integer(BigInt::from(0));
        let mut exps = Vec::new();
        for (&(a, b), _) in c_tilde.poly().terms() {
            exps.push(b - a * r);
        }
        let e_min = *exps.iter().min().unwrap();
        let e_max = *exps.iter().max().unwrap();
        for (&(a, b), c) in c_tilde.poly().terms() {
            direct += BigRational::from_integer(c.clone())
                * u.pow(a as i32)
                * v.pow((b - a * r) as i32);
        }
        let den_at = eval4_rational(&den, &m, &t, &u);
        let expected = direct * den_at.pow((e_max - e_min) as i32) * v.pow(-(e_min as i32));
        let raw_at = eval4_rational(&raw, &m, &t, &u);
        assert_eq!(raw_at, expected, "mismatch at r={r} point ({mi},{ti},{ui})");
    }
}

#[test]
fn monic_lead_resultant_matches_sylvester() {
    use crate::laurent2::bareiss_det;
    let f = MPoly4::from_i64_terms(&[
        (3, [0, 2, 4, 1]),
        (-2, [0, 0, 3, 2]),
        (1, [0, 1, 2, 0]),
        (5, [0, 0, 1, 1]),
        (-1, [0, 3, 0, 0]),
        (2, [0, 1, 5, 0]),
    ]);
    let g = MPoly4::from_i64_terms(&[
        (-1, [0, 1, 3, 2]),
        (2, [0, 2, 1, 0]),
        (1, [0, 0, 1, 1]),
        (4, [0, 1, 0, 0]),
    ]);
    assert!(g.monomial_lead(VAR_T).is_some());
    let fast = resultant_monic_lead(&f, &g, VAR_T);
    let fa = f.coeffs_in(VAR_T);
    let ga = g.coeffs_in(VAR_T);
    let n = fa.len() - 1 + ga.len() - 1;
    let mut mat = vec![vec![MPoly4::zero(); n]; n];
    for i in 0..ga.len() - 1 {
        for (j, c) in fa.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..fa.len() - 1 {
        for (j, c) in ga.iter().rev().enumerate() {
            mat[ga.len() - 1 + i][i + j] = c.clone();
        }
    }
    let direct = bareiss_det(mat).strip_content();
    assert!(fast == direct || fast == direct.neg());
}

#[test]
fn companion_substitution_of_constant_is_constant() {
    let one = crate::laurent2::NormalForm::one();
    let f = companion_substitution(&one, 2);
    assert_eq!(f, MPoly4::one());
}

#[test]
fn pointwise_rejects_zero_trials() {
    assert!(matches!(
        pointwise_divisibility_evidence(0, 0, 1),
        Err(Error::NoTrials)
    ));
}

/// Independent pipeline validation with a graph-knot companion: for the
/// trefoil factor L + M^6 (killing slope -6), the closed-form satellite
/// factor of the r-twisted double is the twist polynomial at r + 6; its
/// square must divide the aligned iterated resultant at integer points.
#[test]
fn trefoil_pointwise_cross_check() {
    let c_tilde = twist_apoly_explicit(1);
    for r in [0i64, 1, -1, 2] {
        let inputs = GridInputs::aligned(&c_tilde, r);
        let mut primes = PrimeStream::new();
        let mut pipes: Vec<PrimePipe> = Vec::new();
        let probe = PrimePipe::new(&inputs, primes.next().unwrap());
        let n1 = probe
            .s1_at_m(3, inputs.n1_bound + 1)
            .unwrap()
            .iter()
            .rposition(|&c| c != 0)
            .unwrap();
        let expected = twist_apoly_explicit(r + 6).poly().mirror().unwrap();
        for &(l0, m0) in &[(7i64, 3i64), (-5, 4)] {
            let res = point_value(&inputs, &mut pipes, &mut primes, n1, l0, m0, 3)
                .expect("nondegenerate point");
            let v = expected
                .poly()
                .eval_bigint(&BigInt::from(l0), &BigInt::from(m0));
            assert!(!v.is_zero());
            assert!(
                (res % (&v * &v)).is_zero(),
                "twist square does not divide at r={r}, point ({l0},{m0})"
            );
        }
    }
}

// 2x2 matrices with MPoly4 entries and a common monomial denominator,
// used to derive the relation polynomials from the representation.
#[derive(Clone, Debug)]
struct Mat2 { a: MPoly4, b: MPoly4, c: MPoly4, d: MPoly4 }

impl Mat2 {
    fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }
}

fn letter(ch: u8) -> Mat2 {
    // x = [[M,1],[0,1/M]] scaled by M; X = inverse scaled by M;
    // y = [[u,0],[t,1/u]] scaled by u; Y = inverse scaled by u
    let z = MPoly4::zero;
    let one = MPoly4::one;
    let mono = |c: i64, e: [i64; 4]| MPoly4::from_i64_terms(&[(c, e)]);
    match ch {
        b'x' => Mat2 { a: mono(1, [0,2,0,0]), b: mono(1, [0,1,0,0]), c: z(), d: one() },
        b'X' => Mat2 { a: one(), b: mono(-1, [0,1,0,0]), c: z(), d: mono(1, [0,2,0,0]) },
        b'y' => Mat2 { a: mono(1, [0,0,0,2]), b: z(), c: mono(1, [0,0,1,1]), d: one() },
        b'Y' => Mat2 { a: one(), b: z(), c: mono(-1, [0,0,1,1]), d: mono(1, [0,0,0,2]) },
        _ => unreachable!(),
    }
}

fn word(w: &str) -> Mat2 {
    let mut it = w.bytes();
    let mut acc = letter(it.next().unwrap());
    for ch in it {
        acc = acc.mul(&letter(ch));
    }
    acc
}

fn divisible_up_to_monomial(num: &MPoly4, den: &MPoly4) -> bool {
    let n = num.strip_content();
    let d = den.strip_content();
    n.try_div_exact(&d).is_some()
}

#[test]
fn derive_relations_from_representation() {
    // relation: Omega = y x Y x y X y x, reversed Omega* = x y X y x Y x y
    let omega = word("yxYxyXyx");
    let omega_star = word("xyXyxYxy");
    let f_w = whitehead_relation();
    for (name, e1, e2) in [
        ("a", &omega.a, &omega_star.a),
        ("b", &omega.b, &omega_star.b),
        ("c", &omega.c, &omega_star.c),
        ("d", &omega.d, &omega_star.d),
    ] {
        let diff = e1.sub(e2);
        assert!(
            diff.is_zero() || divisible_up_to_monomial(&diff, &f_w),
            "relation entry {name} is not controlled by the Whitehead relation"
        );
    }
    // lambda_y = YXyxYxyX carries denominator M^4 u^4 (four letters of each
    // kind); its (1,1) entry over that denominator is the gluing eigenvalue
    let lam_y = word("YXyxYxyX");
    let (v_num, v_den) = gluing_fraction();
    let lhs = lam_y.a.mul(&v_den);
    let rhs = v_num.mul(&MPoly4::from_i64_terms(&[(1, [0, 4, 0, 4])]));
    assert_eq!(lhs, rhs, "gluing fraction must equal the matrix entry");
    // lambda_y is lower triangular on the relation variety
    assert!(divisible_up_to_monomial(&lam_y.b, &f_w));

    // lambda_x = YxyXyxYX; its (1,1) entry over M^4 u^4 equals L, which is
    // exactly the longitude relation
    let lam_x = word("YxyXyxYX");
    let cap = longitude_relation();
    let l_m4u4 = MPoly4::from_i64_terms(&[(-1, [1, 4, 0, 4])]);
    let expr = lam_x.a.add(&l_m4u4);
    assert!(divisible_up_to_monomial(&expr, &cap));
}

#[test]
fn quoted_v_display_is_the_mirror_image() {
    // the widely quoted display of v relates to the derived one by M -> 1/M
    let quoted = MPoly4::from_i64_terms(&[
        (-1, [0, 1, 2, 0]), (1, [0, 3, 2, 0]), (-1, [0, 0, 1, 1]),
        (2, [0, 2, 1, 1]), (-1, [0, 4, 1, 1]), (1, [0, 2, 3, 1]),
        (1, [0, 1, 0, 2]), (1, [0, 1, 2, 2]), (-2, [0, 3, 2, 2]),
        (-1, [0, 2, 1, 3]), (1, [0, 4, 1, 3]),
    ]);
    let (num, _) = gluing_fraction();
    let reflected = MPoly4::from_i64_terms(
        &num.terms().map(|(e, c)| {
            use num_traits::ToPrimitive;
            (c.to_i64().unwrap(), [e[0], 4 - e[1], e[2], e[3]])
        }).collect::<Vec<_>>(),
    );
    assert_eq!(reflected, quoted);
}


#[test]
fn fig8_grid_stage_timing() {
    use std::time::Instant;
    let c_tilde = twist_apoly_explicit(-1);
    let t0 = Instant::now();
    let inputs = GridInputs::aligned(&c_tilde, 0);
    eprintln!("inputs: {:?} (f cells {}x{}, n1_bound {})", t0.elapsed(),
        inputs.f_tu.len(), inputs.f_tu[0].len(), inputs.n1_bound);
    let t1 = Instant::now();
    let mut primes = PrimeStream::new();
    let pipe = PrimePipe::new(&inputs, primes.next().unwrap());
    eprintln!("prime pipe: {:?}", t1.elapsed());
    let t2 = Instant::now();
    let s1_full = pipe.s1_at_m(3, inputs.n1_bound + 1).unwrap();
    let n1 = s1_full.iter().rposition(|&c| c != 0).unwrap();
    eprintln!("probe s1_at_m: {:?}, n1 = {n1}", t2.elapsed());
    let t3 = Instant::now();
    for m in 4..14u64 {
        let _ = pipe.s1_at_m(m, n1 + 1);
    }
    eprintln!("10x s1_at_m: {:?}", t3.elapsed());
    let t4 = Instant::now();
    let s1m = pipe.s1_at_m(20, n1 + 1).unwrap()[..=n1].to_vec();
    for l in 0..10u64 {
        let b = pipe.s2_at(l, 20);
        let _ = resultant_fp(&s1m, &b, pipe.p);
    }
    eprintln!("10x res_u values: {:?}", t4.elapsed());
}
