from setuptools import setup


README = open('README.rst').read()


setup(
    name='soficlab',
    version='1.0',
    author='soficlab contributors',

    description='Finite bi-invariant metric groups, their approximations by permutations '
                'and matrices, and certificates against them.',
    long_description=README,
    license='BSD',

    packages=[
        'soficlab',
        'soficlab.management',
        'soficlab.management.commands',
    ],
    install_requires=[
        'django>=3.2',
        'funcy>=1.7.5,<2.0',
        'numpy>=1.20',
        'scipy>=1.6',
        'sympy>=1.8',
    ],
    entry_points={
        'console_scripts': ['soficlab=soficlab.cli:main'],
    },

    classifiers=[
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Framework :: Django',
        'Framework :: Django :: 3.2',
        'Framework :: Django :: 4.2',

        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],

    zip_safe=False,
    include_package_data=True,
)
