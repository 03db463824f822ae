//! Runs the four instrumented algorithms on small inputs and prints the
//! verdicts, counters and stop positions.

use distinctseq::{backward_test, bucket_test, linear_test, matrix_test, Sequence, SquareMatrix};

fn main() {
    let good = Sequence::new(5, vec![3, 1, 4, 5, 2]).unwrap();
    let bad = Sequence::new(5, vec![3, 1, 4, 1, 5]).unwrap();

    for (label, s) in [("permutation", &good), ("repeat at position 4", &bad)] {
        println!("sequence ({label}): {:?}", s.values());
        for (name, outcome) in [
            ("linear", linear_test(s)),
            ("backward", backward_test(s)),
            ("bucket", bucket_test(s)),
        ] {
            println!(
                "  {name:<8} good={:<5} comparisons={:<3} assignments={:<3} stop={:?}",
                outcome.good,
                outcome.counters.comparisons,
                outcome.counters.assignments,
                outcome.stop
            );
        }
        println!();
    }

    let matrix =
        SquareMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]).unwrap();
    let outcome = matrix_test(&matrix);
    println!(
        "3x3 cyclic matrix: good={} comparisons={} assignments={} stop={:?}",
        outcome.good, outcome.counters.comparisons, outcome.counters.assignments, outcome.stop
    );

    let broken = SquareMatrix::from_rows(vec![
        vec![1, 2, 3],
        vec![2, 3, 1],
        vec![3, 2, 1], // column 2 repeats 2
    ])
    .unwrap();
    let outcome = matrix_test(&broken);
    println!(
        "3x3 with a bad column: good={} stop={:?}",
        outcome.good, outcome.stop
    );

    // malformed input is a distinct error, never a False verdict
    let err = Sequence::new(3, vec![1, 2, 9]).unwrap_err();
    println!("\nvalidation: {err}");
}
