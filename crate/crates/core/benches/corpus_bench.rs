// Placeholder; populated once the corpus module exists.
fn main() {}
