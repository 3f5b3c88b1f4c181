int bounded = 0;
for (int i = 0; i < values.length; i++) {
    if (values[i] > limit) {
        bounded = bounded + limit;
    } else {
        bounded = bounded + values[i];
    }
}
