use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::rat;
use crate::partitions::{enumerate_nc, enumerate_ordered};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn univariate(m: &[i64]) -> StateTable {
    StateTable::univariate(&m.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

fn symmetric(seed: u64, letters: u32, d: usize) -> StateTable {
    let raw = StateTable::random(&mut rng(seed), letters, d);
    StateTable::from_fn(letters, d, |u| raw.get(&u.sorted())).unwrap()
}

#[test]
fn low_degree_formulas() {
    let (m1, m2, m3) = (rat(2, 3), rat(-5, 4), int(3));
    let phi = StateTable::univariate(&[m1.clone(), m2.clone(), m3.clone()]);
    let at = |k: CumulantKind, s: &str| moments_to_cumulants(k, &phi).unwrap().get(&w(s)).unwrap();
    for k in CumulantKind::ALL {
        assert_eq!(at(k, "a1.a1"), &m2 - &m1 * &m1, "{k}");
    }
    assert_eq!(at(CumulantKind::Boolean, "a1.a1.a1"), &m3 - int(2) * &m1 * &m2 + &m1 * &m1 * &m1);
    assert_eq!(
        at(CumulantKind::Monotone, "a1.a1.a1"),
        &m3 - rat(5, 2) * &m1 * &m2 + rat(3, 2) * &m1 * &m1 * &m1
    );
    assert_eq!(
        at(CumulantKind::Free, "a1.a1.a1"),
        &m3 - int(3) * &m1 * &m2 + int(2) * &m1 * &m1 * &m1
    );
}

#[test]
fn pair_cumulants_to_moments() {
    let k2 = CumulantTable::univariate(&[int(0), int(1), int(0), int(0)]);
    let m4 = |k| cumulants_to_moments(k, &k2).unwrap().get(&w("a1.a1.a1.a1")).unwrap();
    assert_eq!(m4(CumulantKind::Free), int(2));
    assert_eq!(m4(CumulantKind::Boolean), int(1));
    assert_eq!(m4(CumulantKind::Classical), int(3));
    let zero = CumulantTable::zero(2, 4);
    for k in CumulantKind::ALL {
        let phi = cumulants_to_moments(k, &zero).unwrap();
        assert_eq!(phi.get(&Word::unit()).unwrap(), int(1));
        assert!(phi.entries().next().is_none(), "{k}");
    }
}

#[test]
fn cross_conversion() {
    let k2 = CumulantTable::univariate(&[int(0), int(1), int(0), int(0)]);
    let b = cumulant_cross_convert(CumulantKind::Free, CumulantKind::Boolean, &k2).unwrap();
    assert_eq!(b.get(&w("a1.a1")).unwrap(), int(1));
    assert_eq!(b.get(&w("a1.a1.a1.a1")).unwrap(), int(1));
    assert_eq!(cumulant_cross_convert(CumulantKind::Monotone, CumulantKind::Monotone, &b).unwrap(), b);
}

#[test]
fn roundtrips() {
    let phi = StateTable::random(&mut rng(1), 2, 6);
    for k in CumulantKind::ALL {
        let c = moments_to_cumulants(k, &phi).unwrap();
        assert_eq!(cumulants_to_moments(k, &c).unwrap(), phi, "{k}");
    }
    let c = CumulantTable::random(&mut rng(2), 2, 5);
    for k in CumulantKind::ALL {
        let phi = cumulants_to_moments(k, &c).unwrap();
        assert_eq!(moments_to_cumulants(k, &phi).unwrap(), c, "{k}");
    }
}

#[test]
fn triangularity() {
    // perturbing one moment moves only its own cumulant among words of that degree
    let phi = StateTable::random(&mut rng(3), 2, 4);
    let target = w("a2.a1.a2");
    let bumped = StateTable::from_fn(2, 4, |u| {
        let v = phi.get(u)?;
        Ok(if *u == target { v + int(1) } else { v })
    })
    .unwrap();
    for k in CumulantKind::ALL {
        let (c0, c1) = (
            moments_to_cumulants(k, &phi).unwrap(),
            moments_to_cumulants(k, &bumped).unwrap(),
        );
        for u in Word::all_up_to(2, 3) {
            let expected = if u == target { int(1) } else { int(0) };
            assert_eq!(c1.get(&u).unwrap() - c0.get(&u).unwrap(), expected, "{k} {u}");
        }
    }
}

#[test]
fn leonov_shiryaev_ordered_form() {
    let phi = StateTable::random(&mut rng(4), 3, 5);
    let c = moments_to_cumulants(CumulantKind::Classical, &phi).unwrap();
    for n in 1..=5 {
        let ordered = enumerate_ordered(PartitionKind::Set, n).unwrap();
        for u in Word::all_of_degree(3, n).into_iter().step_by(7) {
            let mut acc = Rational::zero();
            for op in &ordered {
                let k = op.partition.block_count() as i64;
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let mut prod = rat(sign, k);
                for blk in op.blocks_in_order() {
                    prod *= phi.get(&u.select(blk)).unwrap();
                }
                acc += prod;
            }
            assert_eq!(acc, c.get(&u).unwrap(), "{u}");
        }
    }
}

/// Kreweras complement as the cycles of `π^{-1}γ`, `γ = (1 2 ⋯ n)`; then
/// `μ(π, 1_n) = Π_{V∈K(π)} (−1)^{|V|−1} Cat_{|V|−1}`.
fn kreweras_mobius(blocks: &[Vec<usize>], n: usize) -> Rational {
    let mut pi_inv = vec![0; n + 1];
    for b in blocks {
        for (i, &x) in b.iter().enumerate() {
            pi_inv[b[(i + 1) % b.len()]] = x;
        }
    }
    let sigma = |i: usize| pi_inv[i % n + 1];
    let catalan = |m: usize| {
        let mut c = int(1);
        for j in 0..m {
            c = c * int(2 * (2 * j as i64 + 1)) / int(j as i64 + 2);
        }
        c
    };
    let mut seen = vec![false; n + 1];
    let mut out = int(1);
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let (mut len, mut i) = (0, start);
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = sigma(i);
        }
        let sign = if len % 2 == 1 { int(1) } else { int(-1) };
        out *= sign * catalan(len - 1);
    }
    out
}

#[test]
fn mobius_matches_kreweras() {
    for n in 1..=6 {
        for p in enumerate_nc(n).unwrap() {
            assert_eq!(mobius_nc(&p).unwrap(), kreweras_mobius(p.blocks(), n), "{p}");
        }
    }
}

#[test]
fn classical_convolution() {
    let gauss = univariate(&[0, 1, 0, 3]);
    let sq = classical_convolve(&gauss, &gauss).unwrap();
    assert_eq!(sq.get(&w("a1.a1.a1.a1")).unwrap(), int(12));
    let (phi, psi) = (symmetric(5, 2, 3), symmetric(6, 2, 3));
    let conv = classical_convolve(&phi, &psi).unwrap();
    assert_eq!(
        conv.get(&w("a2")).unwrap(),
        phi.get(&w("a2")).unwrap() + psi.get(&w("a2")).unwrap()
    );
    let c = |t: &StateTable| moments_to_cumulants(CumulantKind::Classical, t).unwrap();
    let (cp, cq, cc) = (c(&phi), c(&psi), c(&conv));
    for u in Word::all_up_to(2, 3) {
        assert_eq!(cc.get(&u).unwrap(), cp.get(&u).unwrap() + cq.get(&u).unwrap(), "{u}");
    }
    let skew = StateTable::new(2, 2, [(w("a1.a2"), int(1))]).unwrap();
    assert!(matches!(classical_convolve(&skew, &phi), Err(Error::NotSymmetric(_))));
}

#[test]
fn kind_names_round_trip() {
    for k in CumulantKind::ALL {
        assert_eq!(k.name().parse::<CumulantKind>().unwrap(), k);
    }
    assert!("cyclic".parse::<CumulantKind>().is_err());
}
