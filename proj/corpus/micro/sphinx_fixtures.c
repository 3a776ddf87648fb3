/* Analogs of the sphinx3 fragments: one true-positive pair and two
   false-positive pairs, each intertwined with unrelated code. */

typedef int int32;
typedef float float32;
typedef double float64;

void dict2pid_dump(FILE *fp, mdef_t *mdef, dict2pid_t *d2p)
{
    int32 i, j, k;

    fprintf(fp, "# INTERNAL (wd-internal word)\n");
    for (i = 0; i < mdef->n_sseq; i++) {
        fprintf(fp, "%5d:", i);
        for (j = 0; j < mdef_n_emit_state(mdef); j++)
            fprintf(fp, " %5d", mdef->sseq[i][j]);
        fprintf(fp, "\n");
    }
    k = d2p->n_ci;
    fprintf(fp, "# %d ci\n", k);
    fflush(fp);
}

int32 gc_compute_closest_cw(gs_t *gs, float32 *feat, FILE *fp)
{
    int32 codeid, cid;
    float32 dist, best;

    best = 1e30;
    for (codeid = 0; codeid < gs->n_code; codeid++) {
        dist = 0;
        for (cid = 0; cid < gs->n_featlen; cid++)
            fprintf(fp, " %5d", gs->codeword[codeid][cid]);
        if (dist < best)
            best = dist;
    }
    return 0;
}

int32 mgau_eval(mgau_model_t *g, int32 m, float32 *x, int32 *active)
{
    int32 j, c;
    float64 score;

    score = 0.0;
    if (m < 0)
        return 0;
    for (j = 0; active[j] >= 0; j++)
        c = active[j];
    score = score + x[0];
    return (int32) score;
}

void lextree_hmm_histbin(lextree_t *lextree, int32 *list, int32 bestscore, int32 *bin, int32 nbin)
{
    int32 i, k, ln;

    for (k = 0; k < nbin; k++)
        bin[k] = 0;
    for (i = 0; i < lextree->n_active; i++)
        ln = list[i];
    lextree->best = bestscore;
}

void fe_spec_magnitude(double *data, int32 data_len, double *spec, int32 fftsize)
{
    int32 j, wrap, k;
    complex *IN;

    IN = (complex *) calloc(fftsize, sizeof(complex));
    for (wrap = 0; j < data_len; wrap++, j++) {
        IN[wrap].r += data[j];
        IN[wrap].i += 0.0;
    }
    for (k = 0; k < fftsize; k++)
        spec[k] = 0.0;
    free(IN);
}

void fe_spec_magnitude_fft(double *data, int32 data_len, double *spec, int32 fftsize)
{
    int32 j, k;
    complex *IN;

    IN = (complex *) calloc(fftsize, sizeof(complex));
    for (j = 0; j < fftsize; j++) {
        IN[j].r = data[j];
        IN[j].i = 0.0;
    }
    fe_fft(IN, fftsize);
    for (k = 0; k < data_len; k++)
        spec[k] = 1.0;
    free(IN);
}
