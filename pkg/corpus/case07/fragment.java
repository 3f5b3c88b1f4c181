int checksum = 0;
for (int i = 0; i < raw.length; i++) {
    checksum = (checksum * 31 + raw[i]) % 997;
}
