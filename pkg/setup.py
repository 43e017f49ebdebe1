from setuptools import setup

setup(
    name='seqnorms',
    version='0.1',
    packages=['seqnorms', 'seqnorms.evaluation'],
    install_requires=['numpy', 'scipy'],
    extras_require={
        'test': ['pytest', 'hypothesis']
    },
    python_requires='>=3.7',
    entry_points={
        'console_scripts': [
            'seqnorms=seqnorms.cli:_entry',
            'seqnorms-norm=seqnorms.compute_norm:_entry',
            'seqnorms-dual-norm=seqnorms.compute_dual_norm:_entry',
            'seqnorms-vecnorm=seqnorms.compute_vecnorm:_entry',
            'seqnorms-summing=seqnorms.compute_summing:_entry',
            'seqnorms-tensor=seqnorms.compute_tensor:_entry',
            'seqnorms-verify=seqnorms.verify:_entry'
        ]
    },
    data_files=[
        ('seqnorms', ['config.py']),
        ('seqnorms/logs', [])
    ],
    zip_safe=False)
