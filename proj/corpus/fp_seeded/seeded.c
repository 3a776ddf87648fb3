/* Look-alike pointer loops whose bounds checks differ. */

void fill_fixed(int *table, int seed)
{
    int i;

    for (i = 0; i < 16; i++) {
        table[i] = seed + i;
        seed = seed * 3;
    }
}

void fill_sized(int *table, int seed, int n)
{
    int i;

    for (i = 0; i < n; i++) {
        table[i] = seed + i;
        seed = seed * 3;
    }
}

int sum_all(int *vals, int count)
{
    int k, acc;

    acc = 0;
    k = 0;
    while (k < count) {
        acc = acc + vals[k];
        k = k + 1;
    }
    return acc;
}

int sum_but_last(int *vals, int count)
{
    int k, acc;

    acc = 0;
    k = 0;
    while (k < count - 1) {
        acc = acc + vals[k];
        k = k + 1;
    }
    return acc;
}

void shift_left(char *line, int len)
{
    int p;

    if (len > 0) {
        for (p = 0; p < len; p++)
            line[p] = line[p] | 32;
    }
    line[0] = 0;
}

void shift_ahead(char *line, int len)
{
    int p;

    if (len > 0) {
        for (p = 0; p < len; p++)
            line[p + 1] = line[p] | 32;
    }
    line[0] = 0;
}

double scan_rows(double **img, int h, int w)
{
    int r, c;
    double best;

    best = 0.0;
    for (r = 0; r < h; r++) {
        for (c = 0; c < w; c++) {
            if (img[r][c] > best)
                best = img[r][c];
        }
    }
    return best;
}

double scan_diag(double **img, int h, int w)
{
    int r, c;
    double best;

    best = 0.0;
    for (r = 0; r < h; r++) {
        for (c = 0; c < w; c++) {
            if (img[r][r] > best)
                best = img[r][c + r];
        }
    }
    return best;
}

void copy_pairs(short *pcm, int frames, int gain)
{
    int f, v;

    v = gain;
    for (f = 0; f < frames; f++) {
        pcm[2 * f] = pcm[2 * f] * v;
        pcm[2 * f + 1] = 0;
    }
}

void copy_mono(short *pcm, int frames, int gain)
{
    int f, v;

    v = gain;
    for (f = 0; f < frames; f++) {
        pcm[f] = pcm[f] * v;
        pcm[f] = 0;
    }
}

int drain_queue(int *ring, int head, int tail)
{
    int pos, got;

    got = 0;
    pos = head;
    while (pos < tail) {
        got = got + ring[pos];
        pos = pos + 1;
        if (got > 1000)
            return got;
    }
    return got;
}

int drain_window(int *ring, int head, int tail, int span)
{
    int pos, got;

    got = 0;
    pos = head;
    while (pos < tail) {
        got = got + ring[pos - span];
        pos = pos + 1;
        if (got > 1000)
            return got;
    }
    return got;
}
