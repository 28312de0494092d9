use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rcomb::binomial::{check_binomial_identity, Identity};

const ALL: [Identity; 3] = [Identity::Db, Identity::Dbv, Identity::Bi];

#[test]
fn exhaustive_up_to_twelve() {
    for which in ALL {
        let arity = which.arity();
        let mut j = vec![1i64; arity];
        loop {
            assert!(check_binomial_identity(which, &j), "{which:?} {j:?}");
            let mut i = 0;
            while i < arity && j[i] == 12 {
                j[i] = 1;
                i += 1;
            }
            if i == arity {
                break;
            }
            j[i] += 1;
        }
    }
}

#[test]
fn random_tuples_up_to_forty() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        for which in ALL {
            let j: Vec<i64> = (0..which.arity()).map(|_| rng.gen_range(1..=40)).collect();
            assert!(check_binomial_identity(which, &j), "{which:?} {j:?}");
        }
    }
}
