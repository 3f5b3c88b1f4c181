if (token == null) {
    failures++;
    throw new IllegalStateException("missing token");
} else if (strict && token.isEmpty()) {
    failures++;
    throw new IllegalStateException("empty token");
}
