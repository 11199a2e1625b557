fn main() { println!("pflink"); }
