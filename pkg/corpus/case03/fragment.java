double total = 0.0;
for (int i = 0; i < xs.length; i++) {
    total += xs[i];
}
double mean = total / xs.length;
