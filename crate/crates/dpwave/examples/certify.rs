//! Run the exact polynomial certificates and print their status.

use dpwave::certify::{certify, ClaimId};

fn main() {
    for id in ClaimId::ALL {
        match certify(id) {
            Ok(c) => {
                println!("{id}: {:?} {}", c.status, c.failed_check.as_deref().unwrap_or(""));
                for w in c.witnesses.iter().take(3) {
                    println!("    {} = {}", w.check, w.value.chars().take(90).collect::<String>());
                }
            }
            Err(e) => println!("{id}: error {e}"),
        }
    }
}
