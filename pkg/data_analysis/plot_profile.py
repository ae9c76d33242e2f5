import argparse
import os
import sys
from pathlib import Path

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from higman_quotients.expmap.profile import block_lengths, load_profile, summarize

# Set style
plt.style.use('default')
sns.set_theme()


def load_profiles(input_dir):
    """Every *.csv written by `expmap search --profile-out`, keyed by file stem."""
    profiles = {}
    for filename in sorted(os.listdir(input_dir)):
        if filename.endswith('.csv') and not filename.startswith('.'):
            profiles[Path(filename).stem] = load_profile(os.path.join(input_dir, filename))
    return profiles


def plot_a_values(df, name, output_dir):
    """a(x) against x, one colour per block, matches marked"""
    plt.figure(figsize=(12, 5))
    sns.scatterplot(data=df, x='x', y='a', hue='block', palette='viridis', legend=False, s=25)
    hits = df[df['match']]
    plt.scatter(hits['x'], hits['a'], facecolors='none', edgecolors='red', s=60, label='f(x+1) = k f(x)')

    plt.title(f'a(x) = f(x) k^-x for {name}')
    plt.xlabel('x')
    plt.ylabel('a(x)')
    plt.legend(loc='upper right')
    plt.tight_layout()

    plt.savefig(os.path.join(output_dir, f'a_values_{name}.png'), bbox_inches='tight', dpi=300)
    plt.close()


def plot_block_lengths(profiles, output_dir):
    """Histogram of block lengths across all profiles"""
    rows = []
    for name, df in profiles.items():
        for length in block_lengths(df):
            rows.append({'profile': name, 'block_length': length})
    if not rows:
        return
    data = pd.DataFrame(rows)

    plt.figure(figsize=(10, 6))
    sns.histplot(data=data, x='block_length', hue='profile', multiple='dodge', discrete=True)
    plt.title('Block lengths of a(x)')
    plt.xlabel('Block length')
    plt.ylabel('Count')
    plt.tight_layout()

    plt.savefig(os.path.join(output_dir, 'block_lengths.png'), bbox_inches='tight', dpi=300)
    plt.close()


def write_summary(profiles, output_dir):
    summary = pd.DataFrame([{'profile': name, **summarize(df)} for name, df in profiles.items()])
    path = os.path.join(output_dir, 'profile_summary.csv')
    summary.to_csv(path, index=False)
    return summary


def main():
    parser = argparse.ArgumentParser(description='Plot a(x) profiles of cycle functions')
    parser.add_argument('--input-dir', default=str(Path(__file__).parent / 'input'),
                        help='directory of profile CSVs')
    parser.add_argument('--output-dir', default=str(Path(__file__).parent / 'output'),
                        help='directory for plots and the summary table')
    args = parser.parse_args()

    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    profiles = load_profiles(args.input_dir)
    if not profiles:
        print(f"No profile CSVs found in {args.input_dir}")
        return

    for name, df in profiles.items():
        plot_a_values(df, name, output_dir)
    plot_block_lengths(profiles, output_dir)
    summary = write_summary(profiles, output_dir)
    print(summary.to_string(index=False))
    print(f"Plots written to {output_dir}")


if __name__ == "__main__":
    main()
