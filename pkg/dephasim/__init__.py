"""
dephasim - exact and Monte Carlo dynamics of qubits dephased by
classical Ornstein-Uhlenbeck noise.

Modules:
- linalg: dense complex matrix kernel and Hermitian eigensolver
- model: noise parameters, partitions, beta-function, initial states
- channel: Gaussian-averaged dephasing channel
- montecarlo: trajectory oracle
- measures: entanglement witness, purity, entropy, saturation
- experiments: figure/table scenarios and CSV output
- cli: command-line front end
"""

__version__ = "1.0.0"
