use goldbach_core::conjecture::{
    conjecture2_witness, conjecture3_witness, conjecture4_verify, matched_witnesses,
    mixed_witnesses, FormWitness, Sign,
};
use goldbach_core::partition::{midpoint_witnesses, partitions, verify_goldbach};
use goldbach_core::progression::{
    coprime_witness, first_offset_witness, gcd_collapse_check, offset_witnesses, CollapseVerdict,
};
use goldbach_core::{Anomaly, Outcome};

use crate::error::Result;
use crate::job::{Task, VerifyJob};
use crate::run::build_table;

/// Lines printed for one target, plus the anomaly when a search came back empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnesses {
    pub lines: Vec<String>,
    pub anomaly: Option<Anomaly>,
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

fn form_line(w: &FormWitness) -> String {
    format!(
        "{} + {} = {} (m={}, n={}, 4m{}1, 4n{}1)",
        w.p1,
        w.p2,
        w.target(),
        w.m,
        w.n,
        sign_char(w.sign1),
        sign_char(w.sign2)
    )
}

fn anomaly_of<T>(o: Outcome<T>) -> Option<Anomaly> {
    o.as_anomaly().cloned()
}

/// Every witness of `task` for the single target `n`.
///
/// `t` is the progression parameter for `t5` and ignored otherwise.
pub fn show_witness(n: u64, task: Task, t: u64) -> Result<Witnesses> {
    let job = VerifyJob::new(task, n, n).with_t_max(t.max(1));
    job.validate()?;
    let table = build_table(&job)?;
    let mut anomaly = None;
    let lines: Vec<String> = match task {
        Task::Goldbach => {
            anomaly = anomaly_of(verify_goldbach(&table, n)?);
            partitions(&table, n)?
                .iter()
                .map(|p| format!("{} = {} + {}", p.n, p.p1, p.p2))
                .collect()
        }
        Task::Midpoint => {
            anomaly = anomaly_of(verify_goldbach(&table, n)?);
            midpoint_witnesses(&table, n)?
                .iter()
                .map(|w| format!("({}, {}, {}, {})", w.midpoint, w.offset, w.p1, w.p2))
                .collect()
        }
        Task::C2 => {
            anomaly = anomaly_of(conjecture2_witness(&table, n)?);
            mixed_witnesses(&table, n).iter().map(form_line).collect()
        }
        Task::C3 => {
            anomaly = anomaly_of(conjecture3_witness(&table, n)?);
            let plus = matched_witnesses(&table, (n - 1) / 2, Sign::Plus);
            let minus = matched_witnesses(&table, n.div_ceil(2), Sign::Minus);
            plus.iter().chain(&minus).map(form_line).collect()
        }
        Task::C4 => {
            anomaly = anomaly_of(conjecture4_verify(&table, n)?);
            let mixed = mixed_witnesses(&table, n);
            let matched = [Sign::Plus, Sign::Minus]
                .into_iter()
                .flat_map(|s| matched_witnesses(&table, n, s));
            mixed
                .iter()
                .map(|w| format!("mixed: {}", form_line(w)))
                .chain(matched.map(|w| format!("matched: {}", form_line(&w))))
                .collect()
        }
        Task::T5 => {
            let t = t.max(1);
            let mut lines = Vec::new();
            for dir in [Sign::Plus, Sign::Minus] {
                if let Some(a) = anomaly_of(first_offset_witness(&table, t, n, dir)?) {
                    anomaly.get_or_insert(a);
                }
                lines.extend(offset_witnesses(&table, t, n, dir)?.iter().map(|w| {
                    format!(
                        "2*{}*{} {} {} = {}",
                        w.t,
                        w.n,
                        sign_char(w.direction),
                        w.offset,
                        w.value
                    )
                }));
            }
            lines
        }
        Task::T6 => {
            let mut lines = Vec::new();
            for offset in (1..2 * n).step_by(2) {
                let line = match gcd_collapse_check(&table, n, offset)? {
                    CollapseVerdict::Vacuous => continue,
                    CollapseVerdict::Confirmed { g, value } => {
                        format!(
                            "I={offset}: gcd={g}, {} - {offset} = {value} -> confirmed",
                            2 * n
                        )
                    }
                    CollapseVerdict::Violation { g, value } => {
                        format!(
                            "I={offset}: gcd={g}, {} - {offset} = {value} -> VIOLATION",
                            2 * n
                        )
                    }
                };
                lines.push(line);
            }
            lines
        }
        Task::T7 => {
            anomaly = anomaly_of(coprime_witness(&table, n)?);
            let base = 2 * n;
            (1..base)
                .step_by(2)
                .filter(|&i| gcd(base, i) == 1 && table.is_prime(base - i))
                .map(|i| format!("{base} - {i} = {}", base - i))
                .collect()
        }
        Task::Census => {
            let row = table.census(n.max(2))?;
            vec![format!(
                "limit={} count_one={} count_three={} total={}",
                row.limit, row.count_one, row.count_three, row.total
            )]
        }
    };
    Ok(Witnesses { lines, anomaly })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_lines() {
        let w = show_witness(16, Task::Midpoint, 1).unwrap();
        assert_eq!(w.lines, ["(8, 3, 11, 5)", "(8, 5, 13, 3)"]);
        assert_eq!(
            show_witness(4, Task::Midpoint, 1).unwrap().lines,
            ["(2, 0, 2, 2)"]
        );
    }

    #[test]
    fn goldbach_lines() {
        let w = show_witness(8900, Task::Goldbach, 1).unwrap();
        assert!(w.lines.contains(&"8900 = 7 + 8893".to_string()));
        assert!(w.lines.contains(&"8900 = 13 + 8887".to_string()));
        assert!(w.anomaly.is_none());
    }

    #[test]
    fn form_lines() {
        let w = show_witness(4, Task::C2, 1).unwrap();
        assert_eq!(w.lines[0], "5 + 11 = 16 (m=1, n=3, 4m+1, 4n-1)");
        let w = show_witness(7, Task::C3, 1).unwrap();
        assert!(w
            .lines
            .contains(&"7 + 7 = 14 (m=2, n=2, 4m-1, 4n-1)".to_string()));
        let w = show_witness(9, Task::T6, 1).unwrap();
        assert!(w.lines.iter().any(|l| l.starts_with("I=15: gcd=3")));
        let w = show_witness(5, Task::T7, 1).unwrap();
        assert_eq!(w.lines[0], "10 - 3 = 7");
    }

    #[test]
    fn invalid_targets() {
        assert!(show_witness(15, Task::Goldbach, 1).is_err());
        assert!(show_witness(1, Task::C2, 1).is_err());
    }
}
