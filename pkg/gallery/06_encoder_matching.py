"""Fitting a source to a channel.

For each pairing the best deterministic encoder is found by exhaustive
search.  A source does best on the channel whose structure it mirrors,
and no encoder beats capacity.
"""
from itlab import catalog
from itlab.encoders import matching_experiment, optimize_stochastic_encoder

sources = {"symmetric": catalog.symmetric_source(), "asymmetric": catalog.asymmetric_source()}
channels = {"symmetric": catalog.symmetric_channel(), "asymmetric": catalog.asymmetric_channel()}

for row in matching_experiment(sources, channels):
    print(f"{row.source:>10} source on {row.channel:>10} channel: "
          f"I = {row.best_mi:.4f}  capacity {row.capacity:.4f}  gap {row.gap:.4f}")

res = optimize_stochastic_encoder(sources["asymmetric"], channels["asymmetric"], seed=1)
print(f"\nstochastic encoder, asymmetric pair: I = {res.mi:.4f} after {res.iterations} steps")
