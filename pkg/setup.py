from setuptools import find_packages, setup

package_name = 'fank'

setup(
    name=package_name,
    version='0.1.0',
    packages=find_packages(exclude=['test']),
    data_files=[
        ('share/ament_index/resource_index/packages',
            ['resource/' + package_name]),
        ('share/' + package_name, ['package.xml']),
    ],
    install_requires=['setuptools', 'sympy>=1.14'],
    zip_safe=True,
    maintainer='matheus',
    maintainer_email='matheus@todo.todo',
    description='Toric fans, lattice ideals and piecewise Laurent polynomials',
    license='TODO: License declaration',
    extras_require={
        'test': [
            'pytest',
            'numpy',
        ],
    },
    entry_points={
        'console_scripts': [
            'fank = fank.scripts.fank_cli:main',
            'fank_pyramid_session = fank.scripts.pyramid_session:main',
        ],
    },
)
