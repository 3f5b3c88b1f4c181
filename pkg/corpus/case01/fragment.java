int acc = 0;
for (int c : charges) {
    if (c > 0) {
        acc += c;
    }
}
