//! Issue shares over time, persist the dealer, resume it later, and check
//! that nothing already handed out changes.

use evcs::evolving::share_digest;
use evcs::image::patterns;
use evcs::{dealer_load, dealer_save, Dealer, SchemeKind};

fn main() -> evcs::Result<()> {
    let secret = patterns::ring(64)?;
    let (mut dealer, first) = Dealer::init(SchemeKind::KGrouped, &secret, 3, 4, 7)?;
    let digests: Vec<u32> = first.iter().map(share_digest).collect();
    println!("issued {} shares, next is #{}", first.len(), dealer.next_t());

    let saved = dealer_save(&dealer);
    println!("manifest is {} bytes of JSON", saved.len());

    let mut resumed = dealer_load(&saved)?;
    for _ in 0..5 {
        let a = dealer.extend()?;
        let b = resumed.extend()?;
        assert_eq!(a, b, "resumed dealer diverged");
    }
    println!("original and resumed dealers agree up to share #{}", dealer.next_t() - 1);

    assert_eq!(&dealer.issued_digests()[..4], &digests[..]);
    println!("digests of shares 1-4 unchanged: {:08x?}", digests);

    let mut tampered: serde_json::Value = serde_json::from_slice(&saved)?;
    tampered["seed"] = 8.into();
    match dealer_load(tampered.to_string().as_bytes()) {
        Err(e) => println!("edited manifest rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
