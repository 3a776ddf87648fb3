/* Pairs of pointer kernels woven through unrelated code. Each kernel shows up
   in several functions under different names; the functions around them do not match. */

int accumulate_and_scale(int *vals, int n, int *w, int m, FILE *log)
{
    int i, k, total;

    total = 0;
    k = m - 1;
    fprintf(log, "start %d\n", n);
    for (i = 0; i < n; i++) {
        total = total + vals[i];
        if (vals[i] > 100)
            total = total - 1;
    }
    while (k >= 0) {
        w[k] = w[k] * 2 + 1;
        k = k - 1;
    }
    fprintf(log, "total %d\n", total);
    return total;
}

int checksum_packet(packet_t *pkt, int *data, int count, int *out, int len)
{
    int a, b, sum, flags;

    flags = pkt->flags;
    sum = 0;
    b = len - 1;
    if (flags & 4)
        pkt->retries = pkt->retries + 1;
    for (a = 0; a < count; a++) {
        sum = sum + data[a];
        if (data[a] > 100)
            sum = sum - 1;
    }
    pkt->checksum = sum;
    pkt->state = 2;
    while (b >= 0) {
        out[b] = out[b] * 2 + 1;
        b = b - 1;
    }
    log_packet(pkt, flags);
    return flags;
}

void clear_grid(int **grid, int rows, int cols, char *buf, int blen)
{
    int r, c, p;

    for (r = 0; r < rows; r++) {
        for (c = 0; c < cols; c++)
            grid[r][c] = r + c;
    }
    for (p = 0; p + 1 < blen; p += 2) {
        buf[p + 1] = buf[p];
        buf[p] = 0;
    }
}

int render_tiles(screen_t *scr, char *pixels, int npix, int **tiles, int th, int tw)
{
    int y, x, q, dirty;

    dirty = scr->dirty;
    scr->frame = scr->frame + 1;
    for (q = 0; q + 1 < npix; q += 2) {
        pixels[q + 1] = pixels[q];
        pixels[q] = 0;
    }
    if (dirty)
        flush_screen(scr);
    for (y = 0; y < th; y++) {
        for (x = 0; x < tw; x++)
            tiles[y][x] = y + x;
    }
    scr->dirty = 0;
    return dirty;
}

double mix_signals(double gain, int *samples, int ns, int **mat, int h, int wd)
{
    int s, u, v, acc;
    double level;

    acc = 0;
    level = gain * 0.5;
    for (u = 0; u < h; u++) {
        for (v = 0; v < wd; v++)
            mat[u][v] = u + v;
    }
    for (s = 0; s < ns; s++) {
        acc = acc + samples[s];
        if (samples[s] > 100)
            acc = acc - 1;
    }
    level = level + acc;
    return level;
}

void shift_buffers(queue_t *q, int *slots, int nslots, char *bytes, int nbytes)
{
    int t, e, pending;

    pending = q->pending;
    t = nslots - 1;
    while (t >= 0) {
        slots[t] = slots[t] * 2 + 1;
        t = t - 1;
    }
    if (pending > 0)
        q->pending = pending - 1;
    for (e = 0; e + 1 < nbytes; e += 2) {
        bytes[e + 1] = bytes[e];
        bytes[e] = 0;
    }
    notify_queue(q);
}
