int high = base * gain + 3;
int low = base - gain + 7;
int mid = high - low;
