//! Authenticated Pedersen vector commitments and the proof of honest
//! aggregation.
//!
//! A commitment to a vector `x` under key `rho` and randomness `r` is
//! `h^r * prod_i g_i^(rho * x_i)`. The scheme is homomorphic: multiplying two
//! commitments commits to the sum of the vectors under the sum of the
//! randomness. The server exploits this to publish a single group element
//! `x_t` that verifies the aggregated model: users accept `w_t` iff
//! `prod_i g_i^(rho * w_t[i]) == x_t`.

use rand::{CryptoRng, RngCore};

use crate::crypto::{Point, Scalar};

/// Public label the reference parameters are derived from.
pub const DEFAULT_PARAMS_LABEL: &[u8] = b"e-seafl-apvc-v1";

/// Errors from commitment operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommitError {
    /// Vector length does not match the parameter dimension.
    #[error("vector length {got} does not match parameter dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    /// An aggregate over zero commitments was requested.
    #[error("empty commitment list")]
    EmptyList,
}

/// Commitment public parameters: `d` vector generators plus the randomness
/// base `h`, all derived deterministically from a public label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApvcParams {
    generators: Vec<Point>,
    h: Point,
}

impl ApvcParams {
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: usize) -> &Point {
        &self.generators[i]
    }

    pub fn randomness_base(&self) -> &Point {
        &self.h
    }
}

/// The secret commitment key shared by all users; zero is rejected because it
/// would make every vector verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApvcKey(Scalar);

impl ApvcKey {
    pub fn generate(rng: &mut (impl RngCore + CryptoRng)) -> ApvcKey {
        loop {
            let candidate = Scalar::random(rng);
            if !candidate.is_zero() {
                return ApvcKey(candidate);
            }
        }
    }

    /// Wraps an existing scalar; returns `None` for zero.
    pub fn from_scalar(scalar: Scalar) -> Option<ApvcKey> {
        (!scalar.is_zero()).then_some(ApvcKey(scalar))
    }

    pub fn scalar(&self) -> &Scalar {
        &self.0
    }
}

/// A commitment to one user's gradient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commitment(pub Point);

/// The server's proof of honest aggregation for iteration `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AggregationProof {
    pub x: Point,
    pub t: u32,
}

/// Derives parameters for dimension `d` from a public label. Generator `i`
/// hashes `(label, 0x00, i)` onto the curve and `h` hashes `(label, 0x01)`,
/// so parameters for a shorter vector are a prefix of those for a longer one.
pub fn apvc_setup(d: usize, label: &[u8]) -> ApvcParams {
    let generators = (0..d as u32)
        .map(|i| {
            let mut input = Vec::with_capacity(label.len() + 5);
            input.extend_from_slice(label);
            input.push(0x00);
            input.extend_from_slice(&i.to_be_bytes());
            Point::hash_to_point(&input)
        })
        .collect();
    let mut input = Vec::with_capacity(label.len() + 1);
    input.extend_from_slice(label);
    input.push(0x01);
    ApvcParams {
        generators,
        h: Point::hash_to_point(&input),
    }
}

/// Commits to `x` under `key` with randomness `r`.
pub fn apvc_commit(
    params: &ApvcParams,
    key: &ApvcKey,
    x: &[Scalar],
    r: &Scalar,
) -> Result<Commitment, CommitError> {
    if x.len() != params.dimension() {
        return Err(CommitError::LengthMismatch {
            expected: params.dimension(),
            got: x.len(),
        });
    }
    let mut acc = params.h.mul(r);
    for (g, xi) in params.generators.iter().zip(x) {
        acc = acc.add(&g.mul(&key.0.mul(xi)));
    }
    Ok(Commitment(acc))
}

/// Group product of a non-empty list of commitments.
pub fn apvc_aggregate_commitments(cms: &[Commitment]) -> Result<Commitment, CommitError> {
    let (first, rest) = cms.split_first().ok_or(CommitError::EmptyList)?;
    Ok(Commitment(
        rest.iter().fold(first.0, |acc, cm| acc.add(&cm.0)),
    ))
}

/// Computes the aggregation proof from the online users' commitments and each
/// assisting node's randomness-lane sum:
/// `x_t = (prod cm) * h^(-sum_j node_r_lane_sums[j])`.
pub fn apvc_compute_proof(
    params: &ApvcParams,
    cms: &[Commitment],
    node_r_lane_sums: &[Scalar],
    t: u32,
) -> Result<AggregationProof, CommitError> {
    let combined = apvc_aggregate_commitments(cms)?;
    let mut r_total = Scalar::ZERO;
    for r in node_r_lane_sums {
        r_total = r_total.add(r);
    }
    Ok(AggregationProof {
        x: combined.0.add(&params.h.mul(&r_total.neg())),
        t,
    })
}

/// Accepts `w_t` iff `prod_i g_i^(rho * w_t[i]) == x_t`.
pub fn apvc_verify_proof(
    params: &ApvcParams,
    key: &ApvcKey,
    w: &[Scalar],
    proof: &AggregationProof,
) -> Result<bool, CommitError> {
    if w.len() != params.dimension() {
        return Err(CommitError::LengthMismatch {
            expected: params.dimension(),
            got: w.len(),
        });
    }
    let mut expected = Point::identity();
    for (g, wi) in params.generators.iter().zip(w) {
        expected = expected.add(&g.mul(&key.0.mul(wi)));
    }
    Ok(expected == proof.x)
}

/// Lifts ring elements (mod 2^32) into the scalar field for committing.
pub fn lift_ring_vector(elems: &[u32]) -> Vec<Scalar> {
    elems.iter().map(|&e| Scalar::from_ring(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn random_vector(rng: &mut ChaCha20Rng, d: usize) -> Vec<Scalar> {
        (0..d).map(|_| Scalar::random(rng)).collect()
    }

    #[test]
    fn setup_is_deterministic() {
        assert_eq!(apvc_setup(1, b"L"), apvc_setup(1, b"L"));
        assert_ne!(apvc_setup(1, b"L"), apvc_setup(1, b"M"));
    }

    #[test]
    fn setup_generators_are_distinct() {
        let params = apvc_setup(2, b"L");
        assert_ne!(params.generator(0), params.generator(1));
        assert_ne!(params.generator(0), params.randomness_base());
        assert_ne!(params.generator(1), params.randomness_base());
    }

    #[test]
    fn setup_is_prefix_consistent() {
        let small = apvc_setup(1, b"L");
        let large = apvc_setup(16, b"L");
        assert_eq!(small.generator(0), large.generator(0));
        assert_eq!(small.randomness_base(), large.randomness_base());
    }

    #[test]
    fn zero_vector_zero_randomness_commits_to_identity() {
        let params = apvc_setup(3, b"L");
        let key = ApvcKey::from_scalar(Scalar::from_u64(5)).unwrap();
        let cm = apvc_commit(&params, &key, &[Scalar::ZERO; 3], &Scalar::ZERO).unwrap();
        assert!(cm.0.is_identity());
    }

    #[test]
    fn unit_exponent_commits_to_first_generator() {
        let params = apvc_setup(1, b"L");
        let key = ApvcKey::from_scalar(Scalar::ONE).unwrap();
        let cm = apvc_commit(&params, &key, &[Scalar::ONE], &Scalar::ZERO).unwrap();
        assert_eq!(&cm.0, params.generator(0));
    }

    #[test]
    fn commit_rejects_length_mismatch() {
        let params = apvc_setup(2, b"L");
        let key = ApvcKey::from_scalar(Scalar::ONE).unwrap();
        assert_eq!(
            apvc_commit(&params, &key, &[Scalar::ONE], &Scalar::ZERO).unwrap_err(),
            CommitError::LengthMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn homomorphism_on_random_inputs() {
        let mut rng = ChaCha20Rng::seed_from_u64(40);
        let params = apvc_setup(4, b"L");
        let key = ApvcKey::generate(&mut rng);
        for _ in 0..32 {
            let x1 = random_vector(&mut rng, 4);
            let x2 = random_vector(&mut rng, 4);
            let r1 = Scalar::random(&mut rng);
            let r2 = Scalar::random(&mut rng);
            let lhs = apvc_commit(&params, &key, &x1, &r1)
                .unwrap()
                .0
                .add(&apvc_commit(&params, &key, &x2, &r2).unwrap().0);
            let sum: Vec<Scalar> = x1.iter().zip(&x2).map(|(a, b)| a.add(b)).collect();
            let rhs = apvc_commit(&params, &key, &sum, &r1.add(&r2)).unwrap();
            assert_eq!(lhs, rhs.0);
        }
    }

    #[test]
    fn aggregate_single_and_inverse() {
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        let params = apvc_setup(2, b"L");
        let key = ApvcKey::generate(&mut rng);
        let cm = apvc_commit(&params, &key, &random_vector(&mut rng, 2), &Scalar::random(&mut rng))
            .unwrap();
        assert_eq!(apvc_aggregate_commitments(&[cm]).unwrap(), cm);
        let inv = Commitment(cm.0.neg());
        assert!(apvc_aggregate_commitments(&[cm, inv]).unwrap().0.is_identity());
        assert_eq!(
            apvc_aggregate_commitments(&[]).unwrap_err(),
            CommitError::EmptyList
        );
    }

    #[test]
    fn aggregate_matches_direct_combined_commitment() {
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        let params = apvc_setup(3, b"L");
        let key = ApvcKey::generate(&mut rng);
        let x1 = random_vector(&mut rng, 3);
        let x2 = random_vector(&mut rng, 3);
        let r1 = Scalar::random(&mut rng);
        let r2 = Scalar::random(&mut rng);
        let cm1 = apvc_commit(&params, &key, &x1, &r1).unwrap();
        let cm2 = apvc_commit(&params, &key, &x2, &r2).unwrap();
        let sum: Vec<Scalar> = x1.iter().zip(&x2).map(|(a, b)| a.add(b)).collect();
        let direct = apvc_commit(&params, &key, &sum, &r1.add(&r2)).unwrap();
        assert_eq!(apvc_aggregate_commitments(&[cm1, cm2]).unwrap(), direct);
    }

    /// Simulates one honest round at the commitment layer: each user commits
    /// to its vector with randomness summed per node lane, the proof combines
    /// everything, and the aggregate vector must verify.
    fn honest_round(
        rng: &mut ChaCha20Rng,
        n: usize,
        k: usize,
        d: usize,
    ) -> (ApvcParams, ApvcKey, Vec<Scalar>, AggregationProof) {
        let params = apvc_setup(d, b"L");
        let key = ApvcKey::generate(rng);
        // r_lanes[i][j]: randomness between user i and node j
        let r_lanes: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..k).map(|_| Scalar::random(rng)).collect())
            .collect();
        let inputs: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..d)
                    .map(|_| Scalar::from_u64(u64::from(rng.next_u32() % 1000)))
                    .collect()
            })
            .collect();
        let cms: Vec<Commitment> = (0..n)
            .map(|i| {
                let r_i = r_lanes[i]
                    .iter()
                    .fold(Scalar::ZERO, |acc, r| acc.add(r));
                apvc_commit(&params, &key, &inputs[i], &r_i).unwrap()
            })
            .collect();
        let node_sums: Vec<Scalar> = (0..k)
            .map(|j| {
                (0..n).fold(Scalar::ZERO, |acc, i| acc.add(&r_lanes[i][j]))
            })
            .collect();
        let proof = apvc_compute_proof(&params, &cms, &node_sums, 1).unwrap();
        let mut w = vec![Scalar::ZERO; d];
        for input in &inputs {
            for (acc, v) in w.iter_mut().zip(input) {
                *acc = acc.add(v);
            }
        }
        (params, key, w, proof)
    }

    #[test]
    fn honest_proof_verifies_small_configs() {
        let mut rng = ChaCha20Rng::seed_from_u64(43);
        for n in 1..=4 {
            for k in 1..=3 {
                for d in 1..=3 {
                    let (params, key, w, proof) = honest_round(&mut rng, n, k, d);
                    assert!(apvc_verify_proof(&params, &key, &w, &proof).unwrap());
                }
            }
        }
    }

    #[test]
    fn perturbed_aggregate_is_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(44);
        let (params, key, mut w, proof) = honest_round(&mut rng, 3, 2, 4);
        w[0] = w[0].add(&Scalar::ONE);
        assert!(!apvc_verify_proof(&params, &key, &w, &proof).unwrap());
    }

    #[test]
    fn perturbed_node_lane_sum_is_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(45);
        let params = apvc_setup(2, b"L");
        let key = ApvcKey::generate(&mut rng);
        let r = Scalar::random(&mut rng);
        let x = random_vector(&mut rng, 2);
        let cm = apvc_commit(&params, &key, &x, &r).unwrap();
        let bad_sum = r.add(&Scalar::ONE);
        let proof = apvc_compute_proof(&params, &[cm], &[bad_sum], 1).unwrap();
        assert!(!apvc_verify_proof(&params, &key, &x, &proof).unwrap());
    }

    #[test]
    fn zero_model_identity_proof_verifies() {
        let params = apvc_setup(1, b"L");
        let key = ApvcKey::from_scalar(Scalar::from_u64(77)).unwrap();
        let proof = AggregationProof {
            x: Point::identity(),
            t: 0,
        };
        assert!(apvc_verify_proof(&params, &key, &[Scalar::ZERO], &proof).unwrap());
    }

    #[test]
    fn key_generation_rejects_zero() {
        assert!(ApvcKey::from_scalar(Scalar::ZERO).is_none());
        let mut rng = ChaCha20Rng::seed_from_u64(46);
        assert!(!ApvcKey::generate(&mut rng).scalar().is_zero());
    }

    mod unforgeability_game {
        //! The commit-oracle unforgeability game: the challenger holds a
        //! secret key and answers commitment queries recorded by randomness;
        //! the adversary wins by producing a commitment equation that is not
        //! an honest linear combination of recorded queries.

        use super::*;
        use std::collections::HashMap;

        struct Challenger {
            params: ApvcParams,
            key: ApvcKey,
            log: HashMap<[u8; 32], Vec<Scalar>>,
        }

        struct Forgery {
            x: Vec<Scalar>,
            cm: Commitment,
            randoms: Vec<Scalar>,
            constants: Vec<u64>,
        }

        impl Challenger {
            fn new(rng: &mut ChaCha20Rng, d: usize) -> Challenger {
                Challenger {
                    params: apvc_setup(d, b"game"),
                    key: ApvcKey::generate(rng),
                    log: HashMap::new(),
                }
            }

            fn query(&mut self, x: Vec<Scalar>, r: Scalar) -> Option<Commitment> {
                if self.log.contains_key(&r.to_bytes()) {
                    return None;
                }
                let cm = apvc_commit(&self.params, &self.key, &x, &r).unwrap();
                self.log.insert(r.to_bytes(), x);
                Some(cm)
            }

            /// Returns true iff the adversary's output wins the game.
            fn adjudicate(&self, f: &Forgery) -> bool {
                assert_eq!(f.randoms.len(), f.constants.len());
                // (ii) all-zero constants are a trivial forgery
                if f.constants.iter().all(|&c| c == 0) {
                    return false;
                }
                let mut combined_r = Scalar::ZERO;
                for (r, &c) in f.randoms.iter().zip(&f.constants) {
                    combined_r = combined_r.add(&r.mul(&Scalar::from_u64(c)));
                }
                // the combined randomness must be fresh
                if self.log.contains_key(&combined_r.to_bytes()) {
                    return false;
                }
                // (i) the claimed commitment must open at the combined randomness
                let expected =
                    apvc_commit(&self.params, &self.key, &f.x, &combined_r).unwrap();
                if expected != f.cm {
                    return false;
                }
                // (iii) honest linear combinations of logged queries do not count
                let all_logged = f
                    .randoms
                    .iter()
                    .all(|r| self.log.contains_key(&r.to_bytes()));
                if all_logged {
                    let d = self.params.dimension();
                    let mut honest = vec![Scalar::ZERO; d];
                    for (r, &c) in f.randoms.iter().zip(&f.constants) {
                        let logged = &self.log[&r.to_bytes()];
                        let c = Scalar::from_u64(c);
                        for (acc, v) in honest.iter_mut().zip(logged) {
                            *acc = acc.add(&v.mul(&c));
                        }
                    }
                    if honest == f.x {
                        return false;
                    }
                }
                true
            }
        }

        #[test]
        fn all_zero_constants_do_not_win() {
            let mut rng = ChaCha20Rng::seed_from_u64(50);
            let mut challenger = Challenger::new(&mut rng, 2);
            let r = Scalar::random(&mut rng);
            let x = random_vector(&mut rng, 2);
            let cm = challenger.query(x.clone(), r).unwrap();
            let forgery = Forgery {
                x,
                cm,
                randoms: vec![r],
                constants: vec![0],
            };
            assert!(!challenger.adjudicate(&forgery));
        }

        #[test]
        fn honest_linear_combination_does_not_win() {
            let mut rng = ChaCha20Rng::seed_from_u64(51);
            let mut challenger = Challenger::new(&mut rng, 2);
            let r1 = Scalar::random(&mut rng);
            let r2 = Scalar::random(&mut rng);
            let x1 = random_vector(&mut rng, 2);
            let x2 = random_vector(&mut rng, 2);
            let cm1 = challenger.query(x1.clone(), r1).unwrap();
            let cm2 = challenger.query(x2.clone(), r2).unwrap();
            // cm1^2 * cm2^3 commits to 2 x1 + 3 x2 at randomness 2 r1 + 3 r2
            let two = Scalar::from_u64(2);
            let three = Scalar::from_u64(3);
            let combined_cm = Commitment(
                cm1.0.mul(&two).add(&cm2.0.mul(&three)),
            );
            let combined_x: Vec<Scalar> = x1
                .iter()
                .zip(&x2)
                .map(|(a, b)| a.mul(&two).add(&b.mul(&three)))
                .collect();
            let forgery = Forgery {
                x: combined_x,
                cm: combined_cm,
                randoms: vec![r1, r2],
                constants: vec![2, 3],
            };
            assert!(!challenger.adjudicate(&forgery));
        }

        #[test]
        fn random_guess_does_not_win() {
            let mut rng = ChaCha20Rng::seed_from_u64(52);
            let mut challenger = Challenger::new(&mut rng, 2);
            challenger
                .query(random_vector(&mut rng, 2), Scalar::random(&mut rng))
                .unwrap();
            for _ in 0..20 {
                let forgery = Forgery {
                    x: random_vector(&mut rng, 2),
                    cm: Commitment(Point::base_mul(&Scalar::random(&mut rng))),
                    randoms: vec![Scalar::random(&mut rng)],
                    constants: vec![1],
                };
                assert!(!challenger.adjudicate(&forgery));
            }
        }

        #[test]
        fn duplicate_randomness_queries_are_refused() {
            let mut rng = ChaCha20Rng::seed_from_u64(53);
            let mut challenger = Challenger::new(&mut rng, 2);
            let r = Scalar::random(&mut rng);
            assert!(challenger.query(random_vector(&mut rng, 2), r).is_some());
            assert!(challenger.query(random_vector(&mut rng, 2), r).is_none());
        }

        #[test]
        fn dishonest_vector_with_logged_randomness_would_win() {
            // Sanity check that the adjudicator recognizes a genuine break:
            // opening the honest combined commitment to a different vector is
            // exactly what unforgeability rules out, so a challenger armed
            // with the key must flag it as a win.
            let mut rng = ChaCha20Rng::seed_from_u64(54);
            let mut challenger = Challenger::new(&mut rng, 1);
            let r1 = Scalar::random(&mut rng);
            let x1 = vec![Scalar::from_u64(4)];
            challenger.query(x1, r1).unwrap();
            // Cheat using challenger internals (an adversary could not).
            let lying_x = vec![Scalar::from_u64(9)];
            let cm = apvc_commit(
                &challenger.params,
                &challenger.key,
                &lying_x,
                &r1.mul(&Scalar::from_u64(2)),
            )
            .unwrap();
            let forgery = Forgery {
                x: lying_x,
                cm,
                randoms: vec![r1],
                constants: vec![2],
            };
            assert!(challenger.adjudicate(&forgery));
        }
    }
}
