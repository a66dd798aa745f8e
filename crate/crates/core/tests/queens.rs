use effsim::queens::{Pipeline, solve, valid};

/// Plain recursive search, independent of the effect machinery. Solutions
/// list the row of each column, 1-based, in lexicographic order.
fn brute_force(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, placed: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if placed.len() as i64 == n {
            out.push(placed.clone());
            return;
        }
        let col = placed.len() as i64;
        for row in 1..=n {
            let ok = placed.iter().enumerate().all(|(c, &r)| {
                let dc = col - c as i64;
                r != row && (r - row).abs() != dc
            });
            if ok {
                placed.push(row);
                go(n, placed, out);
                placed.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn four_queens() {
    for p in Pipeline::ALL {
        assert_eq!(solve(p, 4), vec![vec![2, 4, 1, 3], vec![3, 1, 4, 2]], "{p}");
    }
}

#[test]
fn every_pipeline_matches_brute_force_up_to_seven() {
    for n in 1..=7 {
        let expected = brute_force(n);
        for p in Pipeline::ALL {
            let got = solve(p, n);
            assert_eq!(got, expected, "{p} at n={n}");
            assert!(got.iter().all(|s| valid(s)));
        }
    }
}

#[test]
fn pipeline_names_round_trip() {
    for p in Pipeline::ALL {
        assert_eq!(p.name().parse::<Pipeline>().unwrap(), p);
    }
    assert!("Naive".parse::<Pipeline>().is_err());
}
