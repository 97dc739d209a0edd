"""uansim: deterministic simulator for RL-driven RPL routing in underwater
acoustic sensor networks, with OF0 and Q-routing baselines."""

__version__ = "0.1.0"
