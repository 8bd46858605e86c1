# -*- coding: utf-8 -*-
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from mf_reduction.presentation import Sign, SignedLetter

logger = logging.getLogger(__name__)

#this file collects depth statistics of normal forms over random signed words.

COLUMNS = ["word", "length", "normal_form", "depth", "denominator", "inverse_depth", "product_depth", "identity"]


def sample_signed_words(presentation, samples, max_length, seed=0):
    rng = np.random.default_rng(seed)
    words = []
    for _ in range(samples):
        length = int(rng.integers(0, max_length + 1))
        atoms = rng.integers(0, presentation.size, size=length)
        signs = rng.integers(0, 2, size=length)
        words.append(tuple(SignedLetter(int(atom), Sign.POSITIVE if sign == 0 else Sign.NEGATIVE)
                           for atom, sign in zip(atoms, signs)))
    return words


def inverse_depth_ok(depth, inverse_depth):
    ''' the depth of g⁻¹ is the depth of g, or one more for odd depth, one less for even depth '''
    if depth % 2 == 1:
        return inverse_depth in (depth, depth + 1)
    return inverse_depth in (depth, depth - 1)


def _sharp(n):
    return n if n % 2 == 0 else n + 1


def product_depth_ok(g_depth, h_depth, gh_depth):
    ''' bounds on the depth of gh from the depths of g and h; a trivial factor leaves the other unchanged '''
    if g_depth == 0 or h_depth == 0:
        return gh_depth == g_depth + h_depth
    lower = max(g_depth - _sharp(h_depth), h_depth - _sharp(g_depth))
    upper = g_depth + h_depth - 1 if g_depth % 2 == 1 else g_depth + h_depth
    return lower <= gh_depth <= upper


def depth_statistics(reducer, words, progress=False):
    ''' one row per word; product_depth is the depth of the word times the next word, cyclically '''
    presentation = reducer.presentation
    nfs = [reducer.normal_form(w) for w in tqdm(words, desc="normal forms", disable=not progress)]
    rows = []
    for k, (w, nf) in enumerate(zip(words, nfs)):
        following = nfs[(k + 1) % len(nfs)]
        rows.append({
            "word": presentation.format_signed(w),
            "length": len(w),
            "normal_form": str(nf),
            "depth": nf.depth,
            "denominator": "" if nf.mf.is_empty else str(nf.denominator),
            "inverse_depth": reducer.inverse_normal_form(w).depth,
            "product_depth": reducer.multiply_nf(nf, following).depth,
            "identity": nf.mf.is_empty,
        })
    return pd.DataFrame(rows, columns=COLUMNS)


def get_depth_metrics(df):
    metrics = {}
    metrics['samples'] = len(df)
    if df.empty:
        return metrics
    metrics['mean_depth'] = float(df['depth'].mean())
    metrics['max_depth'] = int(df['depth'].max())
    counts = df['depth'].value_counts().sort_index()
    metrics['depth_histogram'] = ",".join("%d:%d" % (d, c) for d, c in counts.items())
    metrics['identity_share'] = float(df['identity'].mean())
    metrics['inverse_depth_ok'] = bool(all(inverse_depth_ok(d, e) for d, e in zip(df['depth'], df['inverse_depth'])))
    following = np.roll(df['depth'].to_numpy(), -1)
    metrics['product_depth_ok'] = bool(all(product_depth_ok(int(g), int(h), int(gh))
                                           for g, h, gh in zip(df['depth'], following, df['product_depth'])))
    return metrics


#log data to Weights & Biases
def log_wandb(wb, metrics):
    wb.log(dict(metrics))
