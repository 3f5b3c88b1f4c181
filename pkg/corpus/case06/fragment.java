int route = base;
switch (code) {
    case 1:
        route = base + 10;
        break;
    case 2:
        route = base + 20;
        break;
    default:
        route = 0;
        break;
}
