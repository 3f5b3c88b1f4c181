String data = "";
try {
    data = read(path);
} catch (Exception e) {
    errors++;
    data = "";
}
